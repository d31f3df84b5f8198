"""Independent oracles: brute-force implementations used only to check results.

Everything here deliberately avoids the production algorithms: distances come
from Floyd-Warshall, betweenness from explicit enumeration of every shortest
path, and the best partition from exhaustive search over all set partitions.
"""

from __future__ import annotations

import math
from itertools import combinations


def floyd_warshall(n: int, arcs: list[tuple[int, int, float]]) -> list[list[float]]:
    dist = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0.0
    for u, v, w in arcs:
        if w < dist[u][v]:
            dist[u][v] = w
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == math.inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def arcs_of(edges: list[tuple[int, int, float]], directed: bool) -> list[tuple[int, int, float]]:
    if directed:
        return list(edges)
    return [(u, v, w) for u, v, w in edges] + [(v, u, w) for u, v, w in edges]


def enumerate_shortest_paths(
    n: int, arcs: list[tuple[int, int, float]], dist: list[list[float]], s: int, t: int
) -> list[list[int]]:
    """Every shortest s-t path, found by pruned DFS (positive weights only)."""
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for u, v, w in arcs:
        adj[u].append((v, w))
    target = dist[s][t]
    if math.isinf(target):
        return []
    out: list[list[int]] = []

    def walk(cur: int, cost: float, path: list[int]) -> None:
        if cur == t:
            if abs(cost - target) <= 1e-9:
                out.append(path[:])
            return
        for v, w in adj[cur]:
            if cost + w + dist[v][t] <= target + 1e-9:
                path.append(v)
                walk(v, cost + w, path)
                path.pop()

    walk(s, 0.0, [s])
    return out


def brute_betweenness(
    n: int, edges: list[tuple[int, int, float]], directed: bool
) -> list[float]:
    arcs = arcs_of(edges, directed)
    dist = floyd_warshall(n, arcs)
    bc = [0.0] * n
    if directed:
        pairs = [(s, t) for s in range(n) for t in range(n) if s != t]
        denom = (n - 1) * (n - 2)
    else:
        pairs = list(combinations(range(n), 2))
        denom = (n - 1) * (n - 2) / 2
    for s, t in pairs:
        if math.isinf(dist[s][t]):
            continue
        paths = enumerate_shortest_paths(n, arcs, dist, s, t)
        sigma = len(paths)
        for v in range(n):
            if v in (s, t):
                continue
            through = sum(1 for p in paths if v in p)
            if through:
                bc[v] += through / sigma
    return [b / denom for b in bc] if denom else [0.0] * n


def brute_eccentricities(n: int, edges, directed: bool) -> list[float]:
    dist = floyd_warshall(n, arcs_of(edges, directed))
    out = []
    for s in range(n):
        finite = [dist[s][t] for t in range(n) if t != s and not math.isinf(dist[s][t])]
        out.append(max(finite) if finite else 0.0)
    return out


def brute_diameter(n: int, edges, directed: bool) -> float:
    return max(brute_eccentricities(n, edges, directed))


def brute_average_path_length(n: int, edges, directed: bool) -> float | None:
    dist = floyd_warshall(n, arcs_of(edges, directed))
    if directed:
        values = [dist[s][t] for s in range(n) for t in range(n) if s != t]
    else:
        values = [dist[s][t] for s, t in combinations(range(n), 2)]
    finite = [v for v in values if not math.isinf(v)]
    return sum(finite) / len(finite) if finite else None


def set_partitions(n: int):
    """All set partitions of range(n), as restricted-growth membership lists."""
    a = [0] * n

    def rec(i: int, mx: int):
        if i == n:
            yield a[:]
            return
        for c in range(mx + 1):
            a[i] = c
            yield from rec(i + 1, max(mx, c + 1))

    yield from rec(0, 0)


def modularity_matrix(n: int, edges: list[tuple[int, int, float]], membership: list[int]) -> float:
    """Pairwise-sum formulation of weighted modularity (independent of production)."""
    A = [[0.0] * n for _ in range(n)]
    for u, v, w in edges:
        A[u][v] += w
        A[v][u] += w
    k = [sum(row) for row in A]
    two_m = sum(k)
    q = 0.0
    for i in range(n):
        for j in range(n):
            if membership[i] == membership[j]:
                q += A[i][j] - k[i] * k[j] / two_m
    return q / two_m


def max_modularity(n: int, edges: list[tuple[int, int, float]]) -> float:
    best = -math.inf
    for membership in set_partitions(n):
        q = modularity_matrix(n, edges, membership)
        if q > best:
            best = q
    return best
