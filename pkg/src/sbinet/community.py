"""Community structure: weighted modularity and greedy maximization.

The detector is a Louvain-style two-phase loop made fully deterministic:
nodes are scanned in ascending canonical order, gain ties break toward the
smallest community label, and the result is relabeled contiguously in order
of each community's smallest member.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyEdgeSet, InvalidPartition
from .network import Network, NodeKey, undirected_view

_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class Partition:
    membership: dict[NodeKey, int]
    q: float

    @property
    def community_count(self) -> int:
        return len(set(self.membership.values()))


def modularity(net: Network, partition: Mapping[NodeKey, int]) -> float:
    """Weighted Newman modularity of a node -> community assignment."""
    und = undirected_view(net)
    keys = {n.key for n in und.nodes}
    if set(partition) != keys:
        raise InvalidPartition("partition must cover exactly the node set")
    m_w = sum(e.weight for e in und.edges)
    if m_w <= 0:
        raise EmptyEdgeSet("modularity needs at least one edge")
    intra: dict[int, float] = {}
    tot: dict[int, float] = {}
    for e in und.edges:
        cs, cd = partition[e.src], partition[e.dst]
        tot[cs] = tot.get(cs, 0.0) + e.weight
        tot[cd] = tot.get(cd, 0.0) + e.weight
        if cs == cd:
            intra[cs] = intra.get(cs, 0.0) + e.weight
    communities = set(partition.values())
    return sum(
        intra.get(c, 0.0) / m_w - (tot.get(c, 0.0) / (2.0 * m_w)) ** 2 for c in communities
    )


def detect_communities(net: Network) -> Partition:
    """Greedy modularity maximization; deterministic across runs."""
    und = undirected_view(net)
    n = und.node_count
    m_w = sum(e.weight for e in und.edges)
    if m_w <= 0:
        raise EmptyEdgeSet("community detection needs at least one edge")

    index = und.index
    # adjacency with the doubled self-loop convention: k[v] = sum(adj[v].values())
    adj: list[dict[int, float]] = [dict() for _ in range(n)]
    for e in und.edges:
        a, b = index[e.src], index[e.dst]
        adj[a][b] = adj[a].get(b, 0.0) + e.weight
        adj[b][a] = adj[b].get(a, 0.0) + e.weight

    # node_map[i] = current-level super-node holding original node i
    node_map = list(range(n))

    while True:
        size = len(adj)
        comm = list(range(size))
        k = [sum(neigh.values()) for neigh in adj]
        tot = k[:]
        moved_any = False

        improved = True
        while improved:
            improved = False
            for v in range(size):
                cur = comm[v]
                links: dict[int, float] = {}
                for u, w in adj[v].items():
                    if u != v:
                        c = comm[u]
                        links[c] = links.get(c, 0.0) + w
                tot[cur] -= k[v]
                best_c = cur
                best_gain = links.get(cur, 0.0) - k[v] * tot[cur] / (2.0 * m_w)
                # ascending candidate order + strictly-greater replacement makes
                # equal-gain ties land on the smallest community label
                for c in sorted(links):
                    if c == cur:
                        continue
                    gain = links[c] - k[v] * tot[c] / (2.0 * m_w)
                    if gain > best_gain + _GAIN_EPS:
                        best_c, best_gain = c, gain
                tot[best_c] += k[v]
                if best_c != cur:
                    comm[v] = best_c
                    improved = True
                    moved_any = True

        if not moved_any:
            break

        # aggregate: relabel communities by smallest member, then contract
        labels = sorted(set(comm))
        relabel = {c: i for i, c in enumerate(labels)}
        comm = [relabel[c] for c in comm]
        new_adj: list[dict[int, float]] = [dict() for _ in range(len(labels))]
        for v in range(size):
            cv = comm[v]
            for u, w in adj[v].items():
                cu = comm[u]
                new_adj[cv][cu] = new_adj[cv].get(cu, 0.0) + w
        node_map = [comm[node_map_i] for node_map_i in node_map]
        adj = new_adj
        if len(adj) == size:
            break

    final = node_map
    # contiguous labels in order of smallest original member
    first_member: dict[int, int] = {}
    for i, c in enumerate(final):
        first_member.setdefault(c, i)
    order = sorted(first_member, key=lambda c: first_member[c])
    relabel = {c: i for i, c in enumerate(order)}
    membership = {und.nodes[i].key: relabel[c] for i, c in enumerate(final)}
    return Partition(membership, modularity(net, membership))
