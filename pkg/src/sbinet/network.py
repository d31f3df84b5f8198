"""Materializes the complex network described by a validated dataset pair."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .annotated import (
    AnnotatedDataset,
    ROLE_ID,
    ROLE_LABEL,
    ROLE_LAT,
    ROLE_LONG,
    ROLE_SOURCE,
    ROLE_TARGET,
    ROLE_WEIGHT,
)
from .errors import (
    DuplicateNodeId,
    InvalidCoordinate,
    NegativeWeight,
    UnresolvedNodeRef,
)
from .kg import edge_represents_paths
from .turtle import RDF_TYPE
from .vocab import Matcher

NodeKey = int | str


def normalize_key(cell: str) -> NodeKey:
    """Node ids are integers when they look like integers, strings otherwise."""
    s = cell.strip()
    try:
        return int(s)
    except ValueError:
        return s


def node_sort_key(key: NodeKey) -> tuple[int, str] | tuple[int, int]:
    return (0, key) if isinstance(key, int) else (1, key)


@dataclass(frozen=True)
class Node:
    key: NodeKey
    label: str | None = None
    lat: float | None = None
    lon: float | None = None
    attrs: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Edge:
    src: NodeKey
    dst: NodeKey
    weight: float
    multiplicity: int = 1


@dataclass(frozen=True)
class Network:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    directed: bool = False
    represents_paths: bool = False

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[NodeKey, int]:
        """Node key -> dense position, in canonical (sorted) node order."""
        return {n.key: i for i, n in enumerate(self.nodes)}

    @cached_property
    def _cache(self) -> dict:
        # scratch space for expensive derived structures (sweeps, views)
        return {}


def make_network(
    nodes: list[Node], edges: list[Edge], directed: bool, represents_paths: bool
) -> Network:
    nodes = sorted(nodes, key=lambda n: node_sort_key(n.key))
    edges = sorted(edges, key=lambda e: (node_sort_key(e.src), node_sort_key(e.dst)))
    return Network(tuple(nodes), tuple(edges), directed, represents_paths)


class NodeIndex:
    """Lookup table for resolving edge-row node references."""

    _REF = re.compile(r"^\s*(-?\d+)\s+-\s+")

    def __init__(self, nodes: list[Node]):
        self.by_id: dict[NodeKey, NodeKey] = {n.key: n.key for n in nodes}
        self.by_label: dict[str, NodeKey] = {}
        for n in sorted(nodes, key=lambda n: node_sort_key(n.key)):
            if n.label is not None and n.label not in self.by_label:
                self.by_label[n.label] = n.key

    def resolve(self, cell: str, row: int | None = None) -> NodeKey:
        """Exact id match, then a leading ``<id> - `` prefix, then a label match."""
        key = normalize_key(cell)
        if key in self.by_id:
            return key
        m = self._REF.match(cell)
        if m:
            prefixed = int(m.group(1))
            if prefixed in self.by_id:
                return prefixed
        label = cell.strip()
        if label in self.by_label:
            return self.by_label[label]
        raise UnresolvedNodeRef(cell, row)


def resolve_node_ref(cell: str, index: NodeIndex, row: int | None = None) -> NodeKey:
    return index.resolve(cell, row)


@dataclass(frozen=True)
class BuildOptions:
    coord_scale: str = "auto"  # auto | none | micro
    route_classes: tuple[tuple[str, str], ...] = field(default=())  # extra route-bearing classes


def _scale_coordinate(raw: str, mode: str, what: str, row: int) -> float | None:
    s = raw.strip()
    if not s:
        return None
    try:
        value = float(s)
    except ValueError:
        raise InvalidCoordinate(f"{what} {raw!r} in row {row} is not numeric") from None
    if mode == "micro" or (mode == "auto" and abs(value) > 1000):
        value /= 1e6
    limit = 90.0 if what == "lat" else 180.0
    if not -limit <= value <= limit:
        raise InvalidCoordinate(f"{what} {value} in row {row} is outside [-{limit}, {limit}]")
    return value


def build_network(
    node_ds: AnnotatedDataset,
    edge_ds: AnnotatedDataset,
    options: BuildOptions | None = None,
    warnings: list[str] | None = None,
) -> Network:
    """One node per node-set row; edges collapsed per (ordered) node pair.

    Edge weight is the sum of the bound weight column when present, otherwise
    the number of collapsed records.  Self-referencing records are dropped
    with a warning.  Deterministic: node and edge order is sorted.
    """
    options = options or BuildOptions()
    warnings = warnings if warnings is not None else []

    id_col = node_ds.bindings.column_for(ROLE_ID)
    lat_col = node_ds.bindings.column_for(ROLE_LAT)
    lon_col = node_ds.bindings.column_for(ROLE_LONG)
    label_col = node_ds.bindings.column_for(ROLE_LABEL)
    bound_cols = {c for c in (id_col, lat_col, lon_col, label_col) if c is not None}

    nodes: list[Node] = []
    seen: set[NodeKey] = set()
    for row_no, row in enumerate(node_ds.table.rows):
        key = normalize_key(row[id_col])
        if key in seen:
            raise DuplicateNodeId(f"node id {key!r} appears more than once (row {row_no})")
        seen.add(key)
        attrs = tuple(
            (node_ds.table.header[c], row[c])
            for c in range(node_ds.table.col_count)
            if c not in bound_cols
        )
        nodes.append(
            Node(
                key,
                label=row[label_col].strip() if label_col is not None else None,
                lat=_scale_coordinate(row[lat_col], options.coord_scale, "lat", row_no)
                if lat_col is not None
                else None,
                lon=_scale_coordinate(row[lon_col], options.coord_scale, "lon", row_no)
                if lon_col is not None
                else None,
                attrs=attrs,
            )
        )

    index = NodeIndex(nodes)
    src_col = edge_ds.bindings.column_for(ROLE_SOURCE)
    dst_col = edge_ds.bindings.column_for(ROLE_TARGET)
    weight_col = edge_ds.bindings.column_for(ROLE_WEIGHT)

    directed = _edge_record_is_directed(edge_ds)
    represents_paths = edge_represents_paths(edge_ds) or _matches_any(
        edge_ds, options.route_classes
    )

    collapsed: dict[tuple[NodeKey, NodeKey], list[float]] = {}
    dropped_loops = 0
    for row_no, row in enumerate(edge_ds.table.rows):
        src = index.resolve(row[src_col], row_no)
        dst = index.resolve(row[dst_col], row_no)
        if src == dst:
            dropped_loops += 1
            continue
        if weight_col is not None:
            raw = row[weight_col].strip()
            try:
                w = float(raw)
            except ValueError:
                raise NegativeWeight(f"weight {raw!r} in row {row_no} is not numeric") from None
            if w <= 0:
                raise NegativeWeight(f"weight {w} in row {row_no} must be positive")
        else:
            w = 1.0
        if not directed and node_sort_key(dst) < node_sort_key(src):
            src, dst = dst, src
        collapsed.setdefault((src, dst), []).append(w)

    if dropped_loops:
        warnings.append(f"dropped {dropped_loops} self-loop record(s)")

    edges = [
        Edge(src, dst, weight=float(sum(ws)), multiplicity=len(ws))
        for (src, dst), ws in collapsed.items()
    ]
    return make_network(nodes, edges, directed, represents_paths)


def _edge_record_is_directed(edge_ds: AnnotatedDataset) -> bool:
    matcher = Matcher([edge_ds.prefixes])
    markers = matcher.iris("graph", "DirectedEdge")
    return any(
        t.predicate == RDF_TYPE and t.object.kind == "iri" and t.object.value in markers
        for t in edge_ds.triples
    )


def _matches_any(edge_ds: AnnotatedDataset, classes: tuple[tuple[str, str], ...]) -> bool:
    matcher = Matcher([edge_ds.prefixes])
    for prefix, local in classes:
        markers = matcher.iris(prefix, local)
        for t in edge_ds.triples:
            if t.predicate == RDF_TYPE and t.object.kind == "iri" and t.object.value in markers:
                return True
    return False


def undirected_view(net: Network) -> Network:
    """Symmetric closure with reciprocal-edge weights summed; idempotent."""
    if not net.directed:
        return net
    cached = net._cache.get("undirected")
    if cached is not None:
        return cached
    merged: dict[tuple[NodeKey, NodeKey], tuple[float, int]] = {}
    for e in net.edges:
        a, b = e.src, e.dst
        if node_sort_key(b) < node_sort_key(a):
            a, b = b, a
        w, m = merged.get((a, b), (0.0, 0))
        merged[(a, b)] = (w + e.weight, m + e.multiplicity)
    edges = [Edge(a, b, weight=w, multiplicity=m) for (a, b), (w, m) in merged.items()]
    view = make_network(list(net.nodes), edges, directed=False, represents_paths=net.represents_paths)
    net._cache["undirected"] = view
    return view
