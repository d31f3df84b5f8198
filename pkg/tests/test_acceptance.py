"""Acceptance suite: one test per release criterion, each printing a verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances are fixed here and nowhere else.
"""

import json
import random
import time

from conftest import BIKE, BUS, FIXTURES, SUBWAY, UNKNOWN, net_of, strip_geo
from oracles import (
    brute_average_path_length,
    brute_betweenness,
    brute_diameter,
    brute_eccentricities,
    max_modularity,
)
from sbinet.annotated import load_annotated_file
from sbinet.cli import main
from sbinet.community import detect_communities, modularity
from sbinet.dashboard import validate_bundle
from sbinet.metrics import (
    average_path_length,
    betweenness,
    degree_centrality,
    density,
    diameter,
    eccentricity,
    entropy,
)
from sbinet.network import NodeIndex, build_network, resolve_node_ref
from sbinet.kg import classify_roles
from sbinet.paths import PathCriterion

GOLDEN = FIXTURES.parent / "tests" / "golden" / "bike"

ORACLE_TOL = 1e-9
EXACT_TOL = 1e-12


def _verdict(name: str, ok: bool) -> None:
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'}: {name}")
    assert ok, name


def _random_graph(rng: random.Random, weighted: bool):
    n = rng.randint(3, 8)
    directed = rng.random() < 0.4
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j or (directed and i != j)]
    p = rng.uniform(0.25, 0.8)
    edges = []
    for u, v in pairs:
        if rng.random() < p:
            w = rng.choice([0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0]) if weighted else 1.0
            edges.append((u, v, w))
    if not edges:
        edges.append((0, 1, 1.0))
    return n, edges, directed


class TestCriteria:
    def test_c1_metric_oracle_suite(self):
        """Betweenness/eccentricity/diameter/APL match brute force on 200 graphs."""
        started = time.perf_counter()
        rng = random.Random(41)
        for round_no in range(200):
            weighted = round_no % 2 == 1
            n, edges, directed = _random_graph(rng, weighted)
            criterion = PathCriterion.WEIGHT if weighted else PathCriterion.HOPS
            net = net_of(edges, directed=directed, nodes=range(n))

            got_bc = betweenness(net, criterion)
            want_bc = brute_betweenness(n, edges, directed)
            assert all(abs(got_bc[i] - want_bc[i]) <= ORACLE_TOL for i in range(n))

            want_ecc = brute_eccentricities(n, edges, directed)
            assert all(
                abs(eccentricity(net, i, criterion) - want_ecc[i]) <= ORACLE_TOL
                for i in range(n)
            )

            d, witness = diameter(net, criterion)
            assert abs(d - brute_diameter(n, edges, directed)) <= ORACLE_TOL
            assert abs(witness.length - d) <= ORACLE_TOL

            want_apl = brute_average_path_length(n, edges, directed)
            if want_apl is not None:
                assert abs(average_path_length(net, criterion) - want_apl) <= ORACLE_TOL

        elapsed = time.perf_counter() - started
        _verdict(f"metric oracle suite (200 graphs, {elapsed:.1f}s < 30s)", elapsed < 30)

    def test_c2_modularity_optimum(self):
        """Greedy community detection reaches the exhaustive-search maximum."""

        def clique(nodes):
            nodes = list(nodes)
            return [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1 :]]

        def barbell(k, path_len):
            left = clique(range(k))
            right = clique(range(k + path_len, 2 * k + path_len))
            chain = list(range(k - 1, k + path_len + 1))
            return left + right + [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]

        fixture_set = {
            "two-triangle bridge": clique(range(3)) + clique(range(3, 6)) + [(2, 3)],
            "barbell(3,1)": barbell(3, 1),
            "barbell(3,2)": barbell(3, 2),
            "barbell(4,2)": barbell(4, 2),
            "K4": clique(range(4)),
            "K6": clique(range(6)),
            "two disjoint triangles": clique(range(3)) + clique(range(3, 6)),
            "two disjoint K4s": clique(range(4)) + clique(range(4, 8)),
            "triangle ring": clique(range(3)) + clique(range(3, 6)) + clique(range(6, 9))
            + [(2, 3), (5, 6), (8, 0)],
        }
        for name, edges in fixture_set.items():
            n = max(max(u, v) for u, v in edges) + 1
            assert n <= 10
            found = detect_communities(net_of(edges)).q
            best = max_modularity(n, [(u, v, 1.0) for u, v in edges])
            assert abs(found - best) <= ORACLE_TOL, f"{name}: {found} vs optimum {best}"
        _verdict(f"modularity optimum on {len(fixture_set)} fixture graphs", True)

    def test_c3_closed_form_checks(self):
        k4 = net_of([(u, v) for i, u in enumerate("abcd") for v in "abcd"[i + 1 :]])
        star4 = net_of([("hub", "x"), ("hub", "y"), ("hub", "z")])
        p3 = net_of([("a", "b"), ("b", "c")])
        triangles = net_of([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])

        assert abs(density(k4) - 1.0) <= EXACT_TOL
        assert abs(degree_centrality(star4)["hub"] - 1.0) <= EXACT_TOL
        assert abs(entropy(k4)) <= EXACT_TOL  # regular graph
        components = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
        assert abs(modularity(triangles, components) - 0.5) <= EXACT_TOL
        assert abs(average_path_length(p3) - 4 / 3) <= EXACT_TOL
        _verdict("closed-form checks at 1e-12", True)

    def test_c4_discovery_gating(self, capsys, tmp_path):
        path_ids = {"diameter-route", "terminal-candidates", "express-route-candidates"}
        map_ids = {"communities-map", "centrality-map", "diameter-route", "terminal-candidates"}

        def applicable(nodes, edges):
            assert main(["discover", "--nodes", str(nodes), "--edges", str(edges)]) == 0
            report = json.loads(capsys.readouterr().out)
            return {i["id"] for i in report["indicators"] if i["applicable"]}

        bike = applicable(*BIKE)
        assert not bike & path_ids, "event-style edges must not enable path indicators"

        bus = applicable(*BUS)
        assert path_ids <= bus and len(bus) == 8

        stripped = tmp_path / "stops-nogeo.csv"
        stripped.write_text(strip_geo(BUS[0].read_text(encoding="utf-8")), encoding="utf-8")
        bus_nogeo = applicable(stripped, BUS[1])
        assert bus - bus_nogeo == map_ids, "geo removal must drop exactly the map indicators"
        _verdict("discovery gating (paths and geo)", True)

    def test_c5_domain_detection(self, capsys):
        expected = {BIKE: "BicycleShare", BUS: "Bus", SUBWAY: "Subway", UNKNOWN: "Unknown"}
        for pair, domain in expected.items():
            assert main(["inspect", "--nodes", str(pair[0]), "--edges", str(pair[1])]) == 0
            report = json.loads(capsys.readouterr().out)
            assert report["domain"] == domain
        _verdict("domain detection exact strings", True)

    def test_c6_end_to_end_determinism(self, capsys, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            code = main([
                "build", "--nodes", str(BIKE[0]), "--edges", str(BIKE[1]),
                "--out", str(out), "--reproducible",
            ])
            assert code == 0
        capsys.readouterr()
        names = ("dashboard.json", "nodes.csv", "edges.csv", "metrics.json")
        assert all((out_a / n).read_bytes() == (out_b / n).read_bytes() for n in names)
        assert validate_bundle(out_a) == []
        golden = (GOLDEN / "dashboard.json").read_bytes()
        assert (out_a / "dashboard.json").read_bytes() == golden
        _verdict("end-to-end determinism + golden dashboard.json", True)

    def test_c7_format_fidelity(self):
        node_ds = load_annotated_file(BIKE[0])
        edge_ds = load_annotated_file(BIKE[1])
        assert node_ds.bindings.as_dict() == {"id": 0, "long": 1, "lat": 2, "label": 3}
        assert edge_ds.bindings.as_dict() == {"record": 0, "user": 1, "source": 4, "target": 7}

        net = build_network(*classify_roles(node_ds, edge_ds))
        index = NodeIndex(list(net.nodes))
        assert resolve_node_ref("1 - Praça Luiza Távora", index) == 1
        assert resolve_node_ref("12 - Ana Bilhar", index) == 12
        _verdict("format fidelity of the reference excerpts", True)

    def test_c8_performance_floor(self, capsys, tmp_path):
        nodes_file, edges_file = _synthetic_bus_pair(tmp_path, n_nodes=5000, n_edges=50000)
        started = time.perf_counter()
        code = main([
            "build", "--nodes", str(nodes_file), "--edges", str(edges_file),
            "--out", str(tmp_path / "big"), "--reproducible",
        ])
        elapsed = time.perf_counter() - started
        out = capsys.readouterr().out
        assert code == 0
        summary = json.loads(out)
        assert "terminal-candidates" in summary["objects"], "betweenness must be included"
        assert summary["metrics"]["node_count"] == 5000
        _verdict(f"performance floor (5000/50000 in {elapsed:.1f}s < 60s)", elapsed < 60)


def _synthetic_bus_pair(tmp_path, n_nodes: int, n_edges: int):
    rng = random.Random(1234)
    node_lines = [
        "@prefix vstoi: <http://hadatac.org/ont/vstoi> .",
        "@prefix graph: <http://download.wikicrimes.org/ont/graph> .",
        "@prefix ccsv: <http://download.wikicrimes.org/ont/ccsv> .",
        "@prefix qoe-m: <http://download.wikicrimes.org/ont/qoe-m> .",
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema> .",
        "@prefix geo: <http://www.w3.org/2003/01/geo/wgs84_pos> .",
        "<dataset>",
        "    a vstoi:Dataset ;",
        "    a graph:NodeSet ;",
        "    graph:isNodeSetFor <bigbus> ;",
        "    ccsv:hasDataRecord <node> .",
        "<node>",
        "    a graph:Node ;",
        "    a qoe-m:Bus_Stop ;",
        "    graph:hasId <id> ;",
        "    geo:lat <lat> ;",
        "    geo:long <long> ;",
        "    rdfs:label <label> .",
        "<id>",
        "    ccsv:atColumn 0 .",
        "<lat>",
        "    ccsv:atColumn 2 .",
        "<long>",
        "    ccsv:atColumn 1 .",
        "<label>",
        "    ccsv:atColumn 3 .",
        '"STOP ID", "LONG", "LAT", "STOP NAME"',
    ]
    for i in range(1, n_nodes + 1):
        lon = -38600000 + rng.randint(0, 200000)
        lat = -3800000 + rng.randint(0, 150000)
        node_lines.append(f'{i}, {lon}, {lat}, "Parada {i}"')
    nodes_file = tmp_path / "big-stops.csv"
    nodes_file.write_text("\n".join(node_lines) + "\n", encoding="utf-8")

    edge_lines = [
        "@prefix vstoi: <http://hadatac.org/ont/vstoi> .",
        "@prefix graph: <http://download.wikicrimes.org/ont/graph> .",
        "@prefix ccsv: <http://download.wikicrimes.org/ont/ccsv> .",
        "@prefix qoe-m: <http://download.wikicrimes.org/ont/qoe-m> .",
        "<dataset>",
        "    a vstoi:Dataset ;",
        "    a graph:EdgeSet ;",
        "    graph:isEdgeSetFor <bigbus> ;",
        "    ccsv:hasDataRecord <edge> .",
        "<edge>",
        "    a graph:DirectedEdge ;",
        "    a qoe-m:Bus_Route ;",
        "    graph:hasSourceNode <src> ;",
        "    graph:hasTargetNode <dst> ;",
        "    graph:hasWeight <weight> ;",
        "    ccsv:atColumn 0 .",
        "<src>",
        "    ccsv:atColumn 1 .",
        "<dst>",
        "    ccsv:atColumn 2 .",
        "<weight>",
        "    ccsv:atColumn 3 .",
        '"ID", "ORIGEM", "DESTINO", "QTD_LINHAS"',
    ]
    edge_id = 0
    for i in range(1, n_nodes + 1):  # ring keeps the network connected
        edge_id += 1
        edge_lines.append(f"{edge_id}, {i}, {i % n_nodes + 1}, {rng.randint(1, 9)}")
    while edge_id < n_edges:
        u = rng.randint(1, n_nodes)
        v = rng.randint(1, n_nodes)
        if u == v:
            continue
        edge_id += 1
        edge_lines.append(f"{edge_id}, {u}, {v}, {rng.randint(1, 9)}")
    edges_file = tmp_path / "big-routes.csv"
    edges_file.write_text("\n".join(edge_lines) + "\n", encoding="utf-8")
    return nodes_file, edges_file
