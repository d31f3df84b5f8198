import math

import pytest

from conftest import net_of
from sbinet.errors import EmptyEdgeSet, SingletonNetwork
from sbinet.metrics import (
    average_degree,
    bottom_k_degree,
    connected_components,
    degree_centrality,
    degree_histogram,
    density,
    entropy,
    node_weighted_degrees,
    weighted_average_degree,
)

K3 = [("a", "b"), ("b", "c"), ("a", "c")]
P3 = [("a", "b"), ("b", "c")]
P4 = [("a", "b"), ("b", "c"), ("c", "d")]
K4 = [(u, v) for i, u in enumerate("abcd") for v in "abcd"[i + 1 :]]
STAR4 = [("hub", "x"), ("hub", "y"), ("hub", "z")]


class TestAverageDegree:
    def test_triangle_is_regular(self):
        assert average_degree(net_of(K3)) == 2.0

    def test_path_of_three(self):
        assert average_degree(net_of(P3)) == pytest.approx(4 / 3)

    def test_isolated_node(self):
        assert average_degree(net_of([], nodes=["only"])) == 0.0


class TestWeightedAverageDegree:
    def test_two_value_mean(self):
        assert weighted_average_degree(net_of([("a", "b", 2), ("b", "c", 4)])) == 3.0

    def test_unit_weights(self):
        assert weighted_average_degree(net_of(K3)) == 1.0

    def test_four_value_mean(self):
        net = net_of([("a", "b", 1), ("b", "c", 2), ("c", "d", 3), ("d", "a", 6)])
        assert weighted_average_degree(net) == 3.0

    def test_empty_edge_set(self):
        with pytest.raises(EmptyEdgeSet):
            weighted_average_degree(net_of([], nodes=["a"]))


class TestNodeWeightedDegrees:
    def test_star_center_sums_incident_weights(self):
        net = net_of([("hub", "x", 1), ("hub", "y", 2), ("hub", "z", 3)])
        assert node_weighted_degrees(net)["hub"] == 6.0

    def test_isolated_node_is_zero(self):
        net = net_of([("a", "b", 5)], nodes=["a", "b", "loner"])
        assert node_weighted_degrees(net)["loner"] == 0.0

    def test_path_middle(self):
        net = net_of([("a", "b", 2), ("b", "c", 5)])
        assert node_weighted_degrees(net)["b"] == 7.0


class TestDegreeCentrality:
    def test_star_center(self):
        assert degree_centrality(net_of(STAR4))["hub"] == 1.0

    def test_star_leaf(self):
        assert degree_centrality(net_of(STAR4))["x"] == pytest.approx(1 / 3)

    def test_complete_graph(self):
        k5 = [(u, v) for i, u in enumerate("abcde") for v in "abcde"[i + 1 :]]
        assert set(degree_centrality(net_of(k5)).values()) == {1.0}

    def test_singleton_rejected(self):
        with pytest.raises(SingletonNetwork):
            degree_centrality(net_of([], nodes=["a"]))


class TestDensity:
    def test_complete(self):
        assert density(net_of(K4)) == 1.0

    def test_four_nodes_three_edges(self):
        assert density(net_of(P4)) == 0.5

    def test_edgeless(self):
        assert density(net_of([], nodes=range(5))) == 0.0

    def test_directed_uses_ordered_pairs(self):
        net = net_of([("a", "b"), ("b", "a"), ("b", "c")], directed=True)
        assert density(net) == pytest.approx(3 / 6)


class TestEntropy:
    def test_regular_graph_is_zero(self):
        assert entropy(net_of(K3)) == 0.0
        assert entropy(net_of(K4)) == 0.0

    def test_star_four(self):
        # degrees {3,1,1,1}: -(1/4 log2 1/4 + 3/4 log2 3/4)
        expected = -(0.25 * math.log2(0.25) + 0.75 * math.log2(0.75))
        assert entropy(net_of(STAR4)) == pytest.approx(expected, abs=1e-12)
        assert entropy(net_of(STAR4)) == pytest.approx(0.811278124459, abs=1e-9)

    def test_path_of_three(self):
        expected = -((2 / 3) * math.log2(2 / 3) + (1 / 3) * math.log2(1 / 3))
        assert entropy(net_of(P3)) == pytest.approx(expected, abs=1e-12)
        assert entropy(net_of(P3)) == pytest.approx(0.918295834054, abs=1e-9)

    def test_never_negative(self):
        for edges in (K3, P3, P4, STAR4, K4):
            assert entropy(net_of(edges)) >= 0.0


class TestConnectedComponents:
    def test_two_disjoint_edges(self):
        count, labels = connected_components(net_of([("a", "b"), ("c", "d")]))
        assert count == 2
        assert labels == {"a": 0, "b": 0, "c": 1, "d": 1}

    def test_connected_complete(self):
        assert connected_components(net_of(K4))[0] == 1

    def test_three_isolated(self):
        count, labels = connected_components(net_of([], nodes=["x", "y", "z"]))
        assert count == 3
        assert sorted(labels.values()) == [0, 1, 2]


class TestBottomKDegree:
    def test_star_lowest_is_a_leaf(self):
        (node, deg), = bottom_k_degree(net_of(STAR4), 1)
        assert deg == 1 and node == "x"  # ties break toward the smallest id

    def test_k_clamps_to_node_count(self):
        assert len(bottom_k_degree(net_of(K3), 99)) == 3

    def test_path_endpoints_first(self):
        ranked = bottom_k_degree(net_of(P4), 2)
        assert [n for n, _ in ranked] == ["a", "d"]


class TestDegreeHistogram:
    def test_star(self):
        assert degree_histogram(net_of(STAR4)) == {1: 3, 3: 1}


class TestEnrichTables:
    def test_columns_appended_for_bike_style_networks(self):
        from conftest import BIKE
        from sbinet.annotated import load_annotated_file
        from sbinet.kg import classify_roles
        from sbinet.pipeline import RunOptions, build_output, load_pair_from_files

        pair = load_pair_from_files(*BIKE, RunOptions())
        output = build_output(pair, RunOptions())
        added = output.data.nodes_table.header[pair.node_ds.table.col_count :]
        assert added == (
            "sbi_key",
            "sbi_degree",
            "sbi_weighted_degree",
            "sbi_degree_centrality",
            "sbi_community",
            "sbi_component",
        )

    def test_path_columns_added_for_route_networks(self):
        from conftest import BUS
        from sbinet.pipeline import RunOptions, build_output, load_pair_from_files

        pair = load_pair_from_files(*BUS, RunOptions())
        output = build_output(pair, RunOptions())
        added = set(output.data.nodes_table.header)
        assert {"sbi_betweenness", "sbi_eccentricity"} <= added

    def test_nothing_to_add_is_identity(self):
        from conftest import BIKE
        from sbinet.annotated import load_annotated_file
        from sbinet.kg import classify_roles
        from sbinet.metrics import enrich_tables
        from sbinet.network import build_network

        node_ds, edge_ds = classify_roles(*map(load_annotated_file, BIKE))
        net = build_network(node_ds, edge_ds)
        nodes, edges = enrich_tables(node_ds, edge_ds, net, [], [])
        assert nodes == node_ds.table and edges == edge_ds.table
