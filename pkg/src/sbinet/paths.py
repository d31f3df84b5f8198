"""Shortest-path metrics: distances, eccentricity, diameter, betweenness.

All-pairs work runs as one vectorized sweep per network: a numpy BFS (hop
criterion) or a per-source Dijkstra (weight criterion) feeds both the distance
aggregates and a Brandes-style dependency accumulation, so betweenness,
eccentricity, diameter and average path length share a single pass.  Results
are deterministic: sources are scanned in canonical node order and ties break
toward the lexicographically smallest node-id sequence.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    EmptyEdgeSet,
    NoFinitePairs,
    PathMetricNotApplicable,
    Unreachable,
    UnresolvedNodeRef,
)
from .network import Network, NodeKey

log = logging.getLogger(__name__)


class PathCriterion(Enum):
    HOPS = "hops"
    WEIGHT = "weight"


def parse_criterion(text: str) -> PathCriterion:
    value = text.strip().lower()
    if value == "time":
        raise PathMetricNotApplicable(
            "the 'time' criterion needs temporal edge data, which the dataset format does not carry"
        )
    try:
        return PathCriterion(value)
    except ValueError:
        raise PathMetricNotApplicable(f"unknown path criterion {text!r}") from None


@dataclass(frozen=True)
class PathResult:
    nodes: tuple[NodeKey, ...]
    length: float


def _require_paths(net: Network) -> None:
    if not net.represents_paths:
        raise PathMetricNotApplicable(
            "path metrics need edges that represent traversable routes"
        )


# --- compressed adjacency -------------------------------------------------------

@dataclass
class _CSR:
    n: int
    indptr: np.ndarray
    nbr: np.ndarray
    w: np.ndarray
    esrc: np.ndarray  # arc list (parallel to nbr)

    @property
    def edst(self) -> np.ndarray:
        return self.nbr


def _build_csr(net: Network, criterion: PathCriterion, reverse: bool = False) -> _CSR:
    key = ("csr", criterion, reverse)
    cached = net._cache.get(key)
    if cached is not None:
        return cached
    n = net.node_count
    index = net.index
    arcs: list[tuple[int, int, float]] = []
    for e in net.edges:
        a, b = index[e.src], index[e.dst]
        w = e.weight if criterion is PathCriterion.WEIGHT else 1.0
        if net.directed:
            arcs.append((b, a, w) if reverse else (a, b, w))
        else:
            arcs.append((a, b, w))
            arcs.append((b, a, w))
    arcs.sort()
    esrc = np.array([a for a, _, _ in arcs], dtype=np.int64)
    edst = np.array([b for _, b, _ in arcs], dtype=np.int64)
    ew = np.array([w for _, _, w in arcs], dtype=np.float64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, esrc + 1, 1)
    np.cumsum(indptr, out=indptr)
    csr = _CSR(n, indptr, edst, ew, esrc)
    net._cache[key] = csr
    return csr


def _bfs_dist(csr: _CSR, s: int) -> np.ndarray:
    """Hop distances from s; unreachable nodes get +inf."""
    n = csr.n
    dist = np.full(n, -1, dtype=np.int64)
    dist[s] = 0
    frontier = np.array([s], dtype=np.int64)
    d = 0
    while frontier.size:
        starts = csr.indptr[frontier]
        counts = csr.indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        cum = np.cumsum(counts)
        flat = np.repeat(starts - (cum - counts), counts) + np.arange(total)
        targets = csr.nbr[flat]
        fresh = targets[dist[targets] < 0]
        if fresh.size == 0:
            break
        frontier = np.unique(fresh)
        d += 1
        dist[frontier] = d
    out = dist.astype(np.float64)
    out[dist < 0] = np.inf
    return out


def _dijkstra_dist(csr: _CSR, s: int, adj_lists) -> np.ndarray:
    dist = [float("inf")] * csr.n
    dist[s] = 0.0
    heap = [(0.0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj_lists[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return np.array(dist, dtype=np.float64)


def _adj_lists(net: Network, csr: _CSR, criterion: PathCriterion, reverse: bool):
    key = ("adj", criterion, reverse)
    cached = net._cache.get(key)
    if cached is None:
        cached = [
            list(zip(csr.nbr[csr.indptr[u] : csr.indptr[u + 1]].tolist(),
                     csr.w[csr.indptr[u] : csr.indptr[u + 1]].tolist()))
            for u in range(csr.n)
        ]
        net._cache[key] = cached
    return cached


def _distances_from(net: Network, s: int, criterion: PathCriterion, reverse: bool = False) -> np.ndarray:
    csr = _build_csr(net, criterion, reverse)
    if criterion is PathCriterion.HOPS:
        return _bfs_dist(csr, s)
    return _dijkstra_dist(csr, s, _adj_lists(net, csr, criterion, reverse))


# --- the all-sources sweep ---------------------------------------------------------

@dataclass
class SweepStats:
    criterion: PathCriterion
    top_k: int
    ecc: np.ndarray
    finite_sum: float
    finite_count: int
    unreachable_pairs: int
    diam: tuple[float, int, int] | None
    top_pairs: list[tuple[float, int, int]]
    betweenness: np.ndarray


def _sweep(net: Network, criterion: PathCriterion, top_k: int = 1) -> SweepStats:
    cache = net._cache.setdefault("sweeps", {})
    cached: SweepStats | None = cache.get(criterion)
    if cached is not None:
        if cached.top_k >= top_k:
            return cached
        top_k = max(top_k, cached.top_k)

    n = net.node_count
    csr = _build_csr(net, criterion)
    adj = (
        _adj_lists(net, csr, criterion, reverse=False)
        if criterion is PathCriterion.WEIGHT
        else None
    )
    ids = np.arange(n)
    ecc = np.zeros(n, dtype=np.float64)
    finite_sum = 0.0
    finite_count = 0
    unreachable = 0
    diam: tuple[float, int, int] | None = None
    heap: list[tuple[float, int, int]] = []  # (d, -s, -t), min-heap of size top_k
    betw = np.zeros(n, dtype=np.float64)

    for s in range(n):
        if criterion is PathCriterion.HOPS:
            dist = _bfs_dist(csr, s)
        else:
            dist = _dijkstra_dist(csr, s, adj)
        finite = np.isfinite(dist)
        reach = finite.copy()
        reach[s] = False

        if reach.any():
            row = dist[reach]
            row_max = float(row.max())
            ecc[s] = row_max
            if diam is None or row_max > diam[0]:
                t = int(np.flatnonzero(reach & (dist == row_max))[0])
                diam = (row_max, s, t)

        pair_mask = reach & (ids > s) if not net.directed else reach
        dvals = dist[pair_mask]
        if dvals.size:
            finite_sum += float(dvals.sum())
            finite_count += int(dvals.size)
        if not net.directed:
            unreachable += int(((ids > s) & ~finite).sum())
        else:
            unreachable += int((~finite).sum())

        if top_k > 0:
            threshold = heap[0][0] if len(heap) >= top_k else -np.inf
            cand = np.flatnonzero(pair_mask & (dist >= threshold))
            if cand.size > top_k:
                vals = dist[cand]
                kth = np.partition(vals, cand.size - top_k)[cand.size - top_k]
                cand = cand[vals >= kth]
            for t in cand.tolist():
                heapq.heappush(heap, (float(dist[t]), -s, -t))
                if len(heap) > top_k:
                    heapq.heappop(heap)

        _accumulate_dependencies(csr, s, dist, finite, betw)

    top_pairs = sorted(((d, -ns, -nt) for d, ns, nt in heap), key=lambda c: (-c[0], c[1], c[2]))
    stats = SweepStats(
        criterion, top_k, ecc, finite_sum, finite_count, unreachable, diam, top_pairs, betw
    )
    cache[criterion] = stats
    return stats


def _accumulate_dependencies(
    csr: _CSR, s: int, dist: np.ndarray, finite: np.ndarray, betw: np.ndarray
) -> None:
    """One Brandes back-propagation over the tight-edge DAG of source s."""
    tight = (
        finite[csr.esrc]
        & finite[csr.edst]
        & (dist[csr.esrc] + csr.w == dist[csr.edst])
    )
    ts = csr.esrc[tight]
    td = csr.edst[tight]
    if ts.size == 0:
        return
    sorted_d = dist[td]
    order = np.argsort(sorted_d, kind="stable")
    ts, td = ts[order], td[order]
    sorted_d = sorted_d[order]
    # group boundaries between distinct target distances (already sorted)
    starts = np.flatnonzero(np.diff(sorted_d) > 0) + 1
    bounds = [0, *starts.tolist(), ts.size]

    sigma = np.zeros(csr.n, dtype=np.float64)
    sigma[s] = 1.0
    for gi in range(len(bounds) - 1):
        lo, hi = bounds[gi], bounds[gi + 1]
        np.add.at(sigma, td[lo:hi], sigma[ts[lo:hi]])

    delta = np.zeros(csr.n, dtype=np.float64)
    for gi in reversed(range(len(bounds) - 1)):
        lo, hi = bounds[gi], bounds[gi + 1]
        contrib = sigma[ts[lo:hi]] / sigma[td[lo:hi]] * (1.0 + delta[td[lo:hi]])
        np.add.at(delta, ts[lo:hi], contrib)

    betw += delta
    betw[s] -= delta[s]


# --- path reconstruction ---------------------------------------------------------

def _reconstruct(net: Network, s: int, t: int, criterion: PathCriterion) -> tuple[int, ...]:
    """Lexicographically smallest shortest node-index sequence from s to t."""
    dist_to_t = _distances_from(net, t, criterion, reverse=net.directed)
    if not np.isfinite(dist_to_t[s]):
        raise Unreachable(net.nodes[s].key, net.nodes[t].key)
    csr = _build_csr(net, criterion)
    path = [s]
    cur = s
    while cur != t:
        lo, hi = csr.indptr[cur], csr.indptr[cur + 1]
        nbrs = csr.nbr[lo:hi]
        ws = csr.w[lo:hi]
        step = np.flatnonzero(
            np.isfinite(dist_to_t[nbrs]) & (ws + dist_to_t[nbrs] == dist_to_t[cur])
        )
        if step.size == 0:  # cannot happen: Dijkstra/BFS leave an exactly-tight parent
            raise Unreachable(net.nodes[s].key, net.nodes[t].key)
        cur = int(nbrs[step[0]])  # nbr slices are sorted, so [0] is the smallest id
        path.append(cur)
    return tuple(path)


def _keys(net: Network, idxs) -> tuple[NodeKey, ...]:
    return tuple(net.nodes[i].key for i in idxs)


def _node_pos(net: Network, key: NodeKey) -> int:
    try:
        return net.index[key]
    except KeyError:
        raise UnresolvedNodeRef(str(key)) from None


# --- public metric operations ---------------------------------------------------

def shortest_path(
    net: Network, v: NodeKey, v2: NodeKey, criterion: PathCriterion = PathCriterion.HOPS
) -> PathResult:
    """Minimum path between two nodes, ties broken lexicographically."""
    _require_paths(net)
    s, t = _node_pos(net, v), _node_pos(net, v2)
    if s == t:
        return PathResult((net.nodes[s].key,), 0.0)
    dist = _distances_from(net, s, criterion)
    if not np.isfinite(dist[t]):
        raise Unreachable(v, v2)
    path = _reconstruct(net, s, t, criterion)
    return PathResult(_keys(net, path), float(dist[t]))


def eccentricity(
    net: Network, v: NodeKey, criterion: PathCriterion = PathCriterion.HOPS
) -> float:
    """Largest finite shortest-path distance from v; unreachable nodes excluded."""
    _require_paths(net)
    s = _node_pos(net, v)
    dist = _distances_from(net, s, criterion)
    dist[s] = np.inf
    finite = dist[np.isfinite(dist)]
    skipped = net.node_count - 1 - finite.size
    if skipped > 0:
        log.warning("eccentricity(%r): %d unreachable node(s) excluded", v, skipped)
    return float(finite.max()) if finite.size else 0.0


def eccentricities(
    net: Network, criterion: PathCriterion = PathCriterion.HOPS
) -> dict[NodeKey, float]:
    _require_paths(net)
    stats = _sweep(net, criterion)
    return {node.key: float(stats.ecc[i]) for i, node in enumerate(net.nodes)}


def diameter(
    net: Network, criterion: PathCriterion = PathCriterion.HOPS
) -> tuple[float, PathResult]:
    """Maximum eccentricity, with one witness path achieving it."""
    _require_paths(net)
    if net.edge_count == 0:
        raise EmptyEdgeSet("diameter needs at least one edge")
    stats = _sweep(net, criterion)
    assert stats.diam is not None
    d, s, t = stats.diam
    path = _reconstruct(net, s, t, criterion)
    return float(d), PathResult(_keys(net, path), float(d))


def average_path_length(
    net: Network, criterion: PathCriterion = PathCriterion.HOPS
) -> float:
    """Mean of all finite pairwise shortest distances; disconnected pairs excluded."""
    _require_paths(net)
    stats = _sweep(net, criterion)
    if stats.finite_count == 0:
        raise NoFinitePairs("no connected node pair")
    if stats.unreachable_pairs:
        log.warning(
            "average_path_length: %d disconnected pair(s) excluded", stats.unreachable_pairs
        )
    return stats.finite_sum / stats.finite_count


def betweenness(
    net: Network, criterion: PathCriterion = PathCriterion.HOPS
) -> dict[NodeKey, float]:
    """Fraction of all-pairs shortest paths through each node, in [0, 1]."""
    _require_paths(net)
    n = net.node_count
    if n < 3:
        raise PathMetricNotApplicable("betweenness needs at least 3 nodes")
    stats = _sweep(net, criterion)
    denom = float((n - 1) * (n - 2))  # pairs excluding v; halves cancel when undirected
    return {node.key: float(stats.betweenness[i]) / denom for i, node in enumerate(net.nodes)}


def top_k_longest_min_paths(
    net: Network, k: int, criterion: PathCriterion = PathCriterion.HOPS
) -> list[PathResult]:
    """The k largest finite shortest-path distances, with witness paths."""
    _require_paths(net)
    if k <= 0:
        return []
    stats = _sweep(net, criterion, top_k=k)
    out = []
    for d, s, t in stats.top_pairs[:k]:
        path = _reconstruct(net, s, t, criterion)
        out.append(PathResult(_keys(net, path), float(d)))
    return out
