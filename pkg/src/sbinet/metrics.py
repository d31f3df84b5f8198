"""Network metrics and dataset enrichment.

Degree-based measures run on the simple undirected view; path measures live
in :mod:`sbinet.paths` and community structure in :mod:`sbinet.community`.
Everything here is re-exported so callers have one import surface.
"""

from __future__ import annotations

from collections import Counter
from math import log2

from .annotated import AnnotatedDataset, DataTable
from .community import Partition, detect_communities, modularity
from .errors import EmptyEdgeSet, SingletonNetwork
from .network import Network, NodeKey, node_sort_key, undirected_view
from .paths import (
    PathCriterion,
    PathResult,
    average_path_length,
    betweenness,
    diameter,
    eccentricities,
    eccentricity,
    shortest_path,
    top_k_longest_min_paths,
)

__all__ = [
    "average_degree",
    "weighted_average_degree",
    "node_weighted_degrees",
    "degree_centrality",
    "density",
    "entropy",
    "degrees",
    "degree_histogram",
    "connected_components",
    "bottom_k_degree",
    "enrich_tables",
    "format_number",
    # re-exports
    "Partition",
    "detect_communities",
    "modularity",
    "PathCriterion",
    "PathResult",
    "average_path_length",
    "betweenness",
    "diameter",
    "eccentricity",
    "eccentricities",
    "shortest_path",
    "top_k_longest_min_paths",
]


def degrees(net: Network) -> dict[NodeKey, int]:
    """Node degrees on the undirected view."""
    und = undirected_view(net)
    out: dict[NodeKey, int] = {n.key: 0 for n in und.nodes}
    for e in und.edges:
        out[e.src] += 1
        out[e.dst] += 1
    return out


def average_degree(net: Network) -> float:
    """Arithmetic mean of the number of edges per node."""
    degs = degrees(net)
    if not degs:
        raise SingletonNetwork("average degree needs at least one node")
    return sum(degs.values()) / len(degs)


def weighted_average_degree(net: Network) -> float:
    """Arithmetic mean of the edge weights."""
    und = undirected_view(net)
    if und.edge_count == 0:
        raise EmptyEdgeSet("weighted average degree needs at least one edge")
    return sum(e.weight for e in und.edges) / und.edge_count


def node_weighted_degrees(net: Network) -> dict[NodeKey, float]:
    """Per-node sum of incident edge weights (utilization level)."""
    und = undirected_view(net)
    out: dict[NodeKey, float] = {n.key: 0.0 for n in und.nodes}
    for e in und.edges:
        out[e.src] += e.weight
        out[e.dst] += e.weight
    return out


def degree_centrality(net: Network) -> dict[NodeKey, float]:
    """C(v) = d_v / (v - 1) on the simple undirected view."""
    v = net.node_count
    if v < 2:
        raise SingletonNetwork("degree centrality needs at least two nodes")
    return {key: d / (v - 1) for key, d in degrees(net).items()}


def density(net: Network) -> float:
    """Edges as a fraction of the maximum a simple graph could hold."""
    v = net.node_count
    if v < 2:
        raise SingletonNetwork("density needs at least two nodes")
    if net.directed:
        return net.edge_count / (v * (v - 1))
    und = undirected_view(net)
    return und.edge_count / (v * (v - 1) / 2)


def entropy(net: Network) -> float:
    """Shannon entropy (base 2) of the degree distribution; 0 for regular graphs."""
    degs = list(degrees(net).values())
    if not degs:
        return 0.0
    counts = Counter(degs)
    n = len(degs)
    return -sum((c / n) * log2(c / n) for c in counts.values() if c)


def degree_histogram(net: Network) -> dict[int, int]:
    return dict(sorted(Counter(degrees(net).values()).items()))


def connected_components(net: Network) -> tuple[int, dict[NodeKey, int]]:
    """Weakly connected components; labels contiguous by smallest member."""
    und = undirected_view(net)
    parent = list(range(und.node_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    index = und.index
    for e in und.edges:
        a, b = find(index[e.src]), find(index[e.dst])
        if a != b:
            parent[max(a, b)] = min(a, b)

    labels: dict[int, int] = {}
    membership: dict[NodeKey, int] = {}
    for i, node in enumerate(und.nodes):
        root = find(i)
        if root not in labels:
            labels[root] = len(labels)
        membership[node.key] = labels[root]
    return len(labels), membership


def bottom_k_degree(net: Network, k: int) -> list[tuple[NodeKey, int]]:
    """The k smallest degrees, ascending; ties by node id; k clamps to v."""
    ranked = sorted(degrees(net).items(), key=lambda kv: (kv[1], node_sort_key(kv[0])))
    return ranked[: max(k, 0)]


def format_number(value: float | int) -> str:
    """Canonical numeric rendering: 9 significant digits, no trailing noise."""
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".9g")


def append_columns(
    table: DataTable, columns: list[tuple[str, list[str]]]
) -> DataTable:
    """New table with extra columns appended after the original header."""
    for name, values in columns:
        if len(values) != table.row_count:
            raise ValueError(f"column {name!r} has {len(values)} values for {table.row_count} rows")
    header = table.header + tuple(name for name, _ in columns)
    rows = tuple(
        row + tuple(values[i] for _, values in columns)
        for i, row in enumerate(table.rows)
    )
    return DataTable(header, rows)


def enrich_tables(
    node_ds: AnnotatedDataset,
    edge_ds: AnnotatedDataset,
    net: Network,
    node_columns: list[tuple[str, dict[NodeKey, float | int | str]]],
    edge_endpoints: list[tuple[NodeKey, NodeKey] | None],
) -> tuple[DataTable, DataTable]:
    """Append per-node results to the node table and resolved endpoints to the
    edge table.  Original columns are untouched; new names carry the ``sbi_``
    prefix.  With nothing to add, both tables come back unchanged."""
    from .network import normalize_key

    if not node_columns and not edge_endpoints:
        return node_ds.table, edge_ds.table

    id_col = node_ds.bindings.column_for("id")
    row_keys = [normalize_key(row[id_col]) for row in node_ds.table.rows]

    node_cols: list[tuple[str, list[str]]] = [
        ("sbi_key", [str(k) for k in row_keys])
    ]
    for name, mapping in node_columns:
        rendered = []
        for key in row_keys:
            value = mapping[key]
            rendered.append(value if isinstance(value, str) else format_number(value))
        node_cols.append((f"sbi_{name}", rendered))
    nodes_table = append_columns(node_ds.table, node_cols)

    srcs = ["" if ep is None else str(ep[0]) for ep in edge_endpoints]
    dsts = ["" if ep is None else str(ep[1]) for ep in edge_endpoints]
    edges_table = append_columns(
        edge_ds.table, [("sbi_source_id", srcs), ("sbi_target_id", dsts)]
    )
    return nodes_table, edges_table
