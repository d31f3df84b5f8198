"""End-to-end orchestration: two annotated files in, a dashboard bundle out."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog, community, metrics
from .annotated import (
    AnnotatedDataset,
    ROLE_LABEL,
    ROLE_LAT,
    ROLE_LONG,
    ROLE_SOURCE,
    ROLE_TARGET,
    load_annotated_file,
    load_annotated_text,
)
from .dashboard import (
    BundleData,
    ConceptualModel,
    apply_customization,
    build_conceptual_model,
    emit_bundle,
)
from .kg import (
    DomainClass,
    KnowledgeGraph,
    classify_roles,
    derive_capabilities,
    detect_domain,
    discover_indicators_detailed,
)
from .network import BuildOptions, Network, NodeIndex, build_network
from .paths import PathCriterion
from .vocab import CAP_PATHS


@dataclass
class RunOptions:
    k: int = 10
    criterion: PathCriterion = PathCriterion.HOPS
    reproducible: bool = False
    coord_scale: str = "auto"


@dataclass
class LoadedPair:
    node_ds: AnnotatedDataset
    edge_ds: AnnotatedDataset
    kg: KnowledgeGraph
    network: Network
    domain: DomainClass
    capabilities: frozenset[str]
    warnings: list[str] = field(default_factory=list)


def load_pair_from_files(
    nodes_path: str | os.PathLike,
    edges_path: str | os.PathLike,
    options: RunOptions | None = None,
) -> LoadedPair:
    ds_a = load_annotated_file(nodes_path)
    ds_b = load_annotated_file(edges_path)
    return prepare(ds_a, ds_b, options)


def load_pair_from_text(
    nodes_text: str,
    edges_text: str,
    options: RunOptions | None = None,
    names: tuple[str, str] = ("nodes", "edges"),
) -> LoadedPair:
    ds_a = load_annotated_text(nodes_text, names[0])
    ds_b = load_annotated_text(edges_text, names[1])
    return prepare(ds_a, ds_b, options)


def prepare(
    ds_a: AnnotatedDataset, ds_b: AnnotatedDataset, options: RunOptions | None = None
) -> LoadedPair:
    """Validate the pair, build the network and seal the knowledge graph."""
    options = options or RunOptions()
    node_ds, edge_ds = classify_roles(ds_a, ds_b)
    kg = KnowledgeGraph.from_datasets(node_ds, edge_ds)
    warnings: list[str] = []
    net = build_network(
        node_ds, edge_ds, BuildOptions(coord_scale=options.coord_scale), warnings
    )
    capabilities = derive_capabilities(node_ds, edge_ds, net.edge_count)
    domain = detect_domain(kg)
    return LoadedPair(node_ds, edge_ds, kg, net, domain, capabilities, warnings)


def inspect_report(pair: LoadedPair) -> dict:
    return {
        "domain": pair.domain.value,
        "graph": pair.node_ds.graph_id,
        "nodes": {
            "file": pair.node_ds.name,
            "role": pair.node_ds.role,
            "rows": pair.node_ds.table.row_count,
            "bindings": pair.node_ds.bindings.as_dict(),
        },
        "edges": {
            "file": pair.edge_ds.name,
            "role": pair.edge_ds.role,
            "rows": pair.edge_ds.table.row_count,
            "bindings": pair.edge_ds.bindings.as_dict(),
        },
        "network": {
            "nodes": pair.network.node_count,
            "edges": pair.network.edge_count,
            "directed": pair.network.directed,
            "represents_paths": pair.network.represents_paths,
        },
        "capabilities": sorted(pair.capabilities),
        "warnings": list(pair.warnings),
    }


def discovery_report(pair: LoadedPair) -> dict:
    detailed = discover_indicators_detailed(
        pair.kg, pair.capabilities, catalog.builtin_catalog()
    )
    return {
        "domain": pair.domain.value,
        "capabilities": sorted(pair.capabilities),
        "indicators": [
            {
                "id": status.id,
                "metric": status.metric,
                "applicable": status.applicable,
                "missing": list(status.missing),
                "reason": status.reason,
            }
            for status in detailed
        ],
    }


@dataclass
class BuildOutput:
    model: ConceptualModel
    data: BundleData
    applicable: list[str]
    warnings: list[str]


def compute_results(pair: LoadedPair, applicable: list[str], options: RunOptions) -> dict:
    """Every applicable indicator's value, keyed by indicator id."""
    net = pair.network
    results: dict = {}
    # widest path sweep first so diameter/betweenness/eccentricity reuse it
    ordering = sorted(applicable, key=lambda i: i != "express-route-candidates")
    for indicator_id in ordering:
        if indicator_id == "avg-interconnections":
            results[indicator_id] = metrics.average_degree(net)
        elif indicator_id == "connections-vs-usage":
            results[indicator_id] = metrics.node_weighted_degrees(net)
        elif indicator_id == "communities-map":
            results[indicator_id] = community.detect_communities(net)
        elif indicator_id == "centrality-map":
            results[indicator_id] = metrics.degree_centrality(net)
        elif indicator_id == "lowest-offer":
            results[indicator_id] = metrics.bottom_k_degree(net, options.k)
        elif indicator_id == "diameter-route":
            results[indicator_id] = metrics.diameter(net, options.criterion)
        elif indicator_id == "terminal-candidates":
            results[indicator_id] = metrics.betweenness(net, options.criterion)
        elif indicator_id == "express-route-candidates":
            results[indicator_id] = metrics.top_k_longest_min_paths(net, options.k, options.criterion)
    return results


def build_output(
    pair: LoadedPair, options: RunOptions | None = None, manifest: dict | None = None
) -> BuildOutput:
    options = options or RunOptions()
    net = pair.network
    applicable = [
        s["id"] for s in discovery_report(pair)["indicators"] if s["applicable"]
    ]
    results = compute_results(pair, applicable, options)
    has_paths = CAP_PATHS in pair.capabilities
    warnings = list(pair.warnings)

    # per-node enrichment columns, in a fixed order
    node_columns: list[tuple[str, dict]] = [
        ("degree", metrics.degrees(net)),
        ("weighted_degree", metrics.node_weighted_degrees(net)),
    ]
    if net.node_count >= 2:
        node_columns.append(("degree_centrality", metrics.degree_centrality(net)))
    if net.edge_count >= 1:
        partition = results.get("communities-map") or community.detect_communities(net)
        node_columns.append(("community", partition.membership))
    else:
        partition = None
    component_count, component_labels = metrics.connected_components(net)
    node_columns.append(("component", component_labels))
    if has_paths and net.node_count >= 3:
        node_columns.append(
            ("betweenness", results.get("terminal-candidates") or metrics.betweenness(net, options.criterion))
        )
    if has_paths:
        node_columns.append(("eccentricity", metrics.eccentricities(net, options.criterion)))

    index = NodeIndex(list(net.nodes))
    src_col = pair.edge_ds.bindings.column_for(ROLE_SOURCE)
    dst_col = pair.edge_ds.bindings.column_for(ROLE_TARGET)
    endpoints = []
    for row in pair.edge_ds.table.rows:
        endpoints.append((index.resolve(row[src_col]), index.resolve(row[dst_col])))

    nodes_table, edges_table = metrics.enrich_tables(
        pair.node_ds, pair.edge_ds, net, node_columns, endpoints
    )

    summary = _metrics_summary(pair, options, results, partition, component_count, warnings)

    columns = {
        "nodes": nodes_table.header,
        "edges": edges_table.header,
        "metrics": tuple(sorted(summary)),
    }
    model = build_conceptual_model(
        applicable,
        results,
        pair.domain,
        columns=columns,
        source={"nodes": os.path.basename(pair.node_ds.name), "edges": os.path.basename(pair.edge_ds.name)},
        k=options.k,
    )
    model = apply_customization(model, manifest)

    node_bindings = pair.node_ds.bindings
    header = pair.node_ds.table.header
    node_fields = {
        "key_field": "sbi_key",
        "label_field": header[node_bindings.column_for(ROLE_LABEL)]
        if node_bindings.column_for(ROLE_LABEL) is not None
        else None,
        "lat_field": header[node_bindings.column_for(ROLE_LAT)]
        if node_bindings.column_for(ROLE_LAT) is not None
        else None,
        "lon_field": header[node_bindings.column_for(ROLE_LONG)]
        if node_bindings.column_for(ROLE_LONG) is not None
        else None,
    }
    edge_fields = {"source_field": "sbi_source_id", "target_field": "sbi_target_id"}
    data = BundleData(nodes_table, edges_table, summary, node_fields, edge_fields)
    return BuildOutput(model, data, applicable, warnings)


def _metrics_summary(
    pair: LoadedPair,
    options: RunOptions,
    results: dict,
    partition,
    component_count: int,
    warnings: list[str],
) -> dict:
    net = pair.network
    summary: dict = {
        "node_count": net.node_count,
        "edge_count": net.edge_count,
        "directed": net.directed,
        "represents_paths": net.represents_paths,
        "domain": pair.domain.value,
        "component_count": component_count,
        "degree_histogram": {str(k): v for k, v in metrics.degree_histogram(net).items()},
        "warnings": sorted(warnings),
    }
    if net.node_count >= 1:
        summary["average_degree"] = metrics.average_degree(net)
        summary["entropy"] = metrics.entropy(net)
    if net.node_count >= 2:
        summary["density"] = metrics.density(net)
    if net.edge_count >= 1:
        summary["weighted_average_degree"] = metrics.weighted_average_degree(net)
    if partition is not None:
        summary["modularity"] = partition.q
        summary["community_count"] = partition.community_count
    if "lowest-offer" in results:
        summary["bottom_degrees"] = [
            {"node": str(node), "degree": deg} for node, deg in results["lowest-offer"]
        ]
    if CAP_PATHS in pair.capabilities:
        summary["criterion"] = options.criterion.value
        if "diameter-route" in results:
            d, witness = results["diameter-route"]
            summary["diameter"] = {
                "length": d,
                "path": [str(k) for k in witness.nodes],
            }
        if net.edge_count >= 1:
            summary["average_path_length"] = metrics.average_path_length(net, options.criterion)
        if "express-route-candidates" in results:
            summary["top_paths"] = [
                {"length": p.length, "path": [str(k) for k in p.nodes]}
                for p in results["express-route-candidates"]
            ]
    return summary


def run_build(
    nodes_path: str | os.PathLike,
    edges_path: str | os.PathLike,
    out_dir: str | os.PathLike,
    options: RunOptions | None = None,
    manifest: dict | None = None,
) -> tuple[Path, BuildOutput]:
    options = options or RunOptions()
    pair = load_pair_from_files(nodes_path, edges_path, options)
    output = build_output(pair, options, manifest)
    path = emit_bundle(output.model, output.data, out_dir, reproducible=options.reproducible)
    return path, output
