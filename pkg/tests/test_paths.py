import random

import pytest

from conftest import net_of
from oracles import (
    brute_average_path_length,
    brute_betweenness,
    brute_diameter,
    brute_eccentricities,
)
from sbinet.errors import (
    EmptyEdgeSet,
    NoFinitePairs,
    PathMetricNotApplicable,
    Unreachable,
)
from sbinet.paths import (
    PathCriterion,
    average_path_length,
    betweenness,
    diameter,
    eccentricity,
    parse_criterion,
    shortest_path,
    top_k_longest_min_paths,
)

P3 = [("a", "b"), ("b", "c")]
P4 = [("a", "b"), ("b", "c"), ("c", "d")]
K3 = [("a", "b"), ("b", "c"), ("a", "c")]
K4 = [(u, v) for i, u in enumerate("abcd") for v in "abcd"[i + 1 :]]
BRIDGED = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]


class TestGating:
    def test_every_path_metric_refuses_event_edges(self):
        net = net_of(P3, paths=False)
        for call in (
            lambda: shortest_path(net, "a", "c"),
            lambda: eccentricity(net, "a"),
            lambda: diameter(net),
            lambda: average_path_length(net),
            lambda: betweenness(net),
            lambda: top_k_longest_min_paths(net, 2),
        ):
            with pytest.raises(PathMetricNotApplicable):
                call()

    def test_time_criterion_rejected_with_diagnostic(self):
        with pytest.raises(PathMetricNotApplicable, match="temporal"):
            parse_criterion("time")

    def test_known_criteria_parse(self):
        assert parse_criterion("hops") is PathCriterion.HOPS
        assert parse_criterion("WEIGHT") is PathCriterion.WEIGHT


class TestShortestPath:
    def test_path_of_three_by_hops(self):
        result = shortest_path(net_of(P3), "a", "c")
        assert result.nodes == ("a", "b", "c")
        assert result.length == 2

    def test_same_node(self):
        result = shortest_path(net_of(P3), "b", "b")
        assert result.nodes == ("b",) and result.length == 0

    def test_weighted_square_prefers_cheap_side(self):
        square = [("a", "b", 2), ("b", "c", 2), ("a", "d", 1), ("d", "c", 1)]
        result = shortest_path(net_of(square), "a", "c", PathCriterion.WEIGHT)
        assert result.nodes == ("a", "d", "c")
        assert result.length == 2.0

    def test_unreachable(self):
        net = net_of([("a", "b")], nodes=["a", "b", "far"])
        with pytest.raises(Unreachable):
            shortest_path(net, "a", "far")

    def test_lexicographic_tie_break(self):
        # two equal-hop routes a->b->d and a->c->d: the b route wins
        diamond = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
        assert shortest_path(net_of(diamond), "a", "d").nodes == ("a", "b", "d")

    def test_directed_respects_arc_direction(self):
        net = net_of([("a", "b"), ("b", "c"), ("c", "a")], directed=True)
        assert shortest_path(net, "c", "b").nodes == ("c", "a", "b")


class TestEccentricity:
    def test_path_endpoint(self):
        assert eccentricity(net_of(P3), "a") == 2

    def test_path_middle(self):
        assert eccentricity(net_of(P3), "b") == 1

    def test_complete_graph(self):
        assert eccentricity(net_of(K4), "a") == 1

    def test_unreachable_excluded(self):
        net = net_of([("a", "b")], nodes=["a", "b", "far"])
        assert eccentricity(net, "a") == 1


class TestDiameter:
    def test_chain(self):
        d, witness = diameter(net_of(P4))
        assert d == 3
        assert witness.nodes == ("a", "b", "c", "d")

    def test_complete(self):
        assert diameter(net_of(K4))[0] == 1

    def test_bridged_triangles(self):
        d, witness = diameter(net_of(BRIDGED))
        assert d == brute_diameter(6, [(u, v, 1.0) for u, v in BRIDGED], False) == 3
        assert witness.length == 3 and len(witness.nodes) == 4

    def test_no_edges(self):
        with pytest.raises(EmptyEdgeSet):
            diameter(net_of([], nodes=["a", "b"]))


class TestAveragePathLength:
    def test_path_of_three(self):
        assert average_path_length(net_of(P3)) == pytest.approx(4 / 3, abs=1e-12)

    def test_complete(self):
        assert average_path_length(net_of(K4)) == 1.0

    def test_disconnected_pairs_excluded(self):
        assert average_path_length(net_of([("a", "b"), ("c", "d")])) == 1.0

    def test_no_finite_pairs(self):
        lonely = net_of([], nodes=["a", "b"])
        with pytest.raises(NoFinitePairs):
            average_path_length(lonely)


class TestBetweenness:
    def test_path_middle_carries_everything(self):
        values = betweenness(net_of(P3))
        assert values["b"] == pytest.approx(1.0)
        assert values["a"] == values["c"] == 0.0

    def test_complete_graph_all_zero(self):
        assert set(betweenness(net_of(K4)).values()) == {0.0}

    def test_needs_three_nodes(self):
        with pytest.raises(PathMetricNotApplicable):
            betweenness(net_of([("a", "b")]))


class TestTopK:
    def test_k1_equals_diameter_witness(self):
        (top,) = top_k_longest_min_paths(net_of(P4), 1)
        assert top.nodes == diameter(net_of(P4))[1].nodes

    def test_complete_triangle_all_unit(self):
        paths = top_k_longest_min_paths(net_of(K3), 3)
        assert [p.length for p in paths] == [1, 1, 1]

    def test_bridged_triangles_top_two_cross_the_bridge(self):
        paths = top_k_longest_min_paths(net_of(BRIDGED), 2)
        assert [p.length for p in paths] == [3, 3]
        for p in paths:
            assert p.nodes[0] in (0, 1) and p.nodes[-1] in (4, 5)

    def test_descending_and_deterministic(self):
        paths = top_k_longest_min_paths(net_of(BRIDGED), 6)
        lengths = [p.length for p in paths]
        assert lengths == sorted(lengths, reverse=True)
        again = top_k_longest_min_paths(net_of(BRIDGED), 6)
        assert [p.nodes for p in paths] == [p.nodes for p in again]


def random_network(rng: random.Random, weighted: bool):
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


class TestOracleComparison:
    """Engine results must match brute-force enumeration on small graphs."""

    def _check(self, n, edges, directed, criterion):
        net = net_of(edges, directed=directed, nodes=range(n))
        key_of = {i: i for i in range(n)}
        raw = [(u, v, w) for u, v, w in edges]

        engine_bc = betweenness(net, criterion)
        brute_bc = brute_betweenness(n, raw, directed)
        for i in range(n):
            assert engine_bc[key_of[i]] == pytest.approx(brute_bc[i], abs=1e-9)

        brute_ecc = brute_eccentricities(n, raw, directed)
        for i in range(n):
            assert eccentricity(net, i, criterion) == pytest.approx(brute_ecc[i], abs=1e-9)

        if net.edge_count:
            d, witness = diameter(net, criterion)
            assert d == pytest.approx(max(brute_ecc), abs=1e-9)
            assert witness.length == pytest.approx(d, abs=1e-9)

        expected_apl = brute_average_path_length(n, raw, directed)
        if expected_apl is not None:
            assert average_path_length(net, criterion) == pytest.approx(expected_apl, abs=1e-9)

    def test_many_random_graphs(self):
        rng = random.Random(20180715)
        for round_no in range(60):
            weighted = round_no % 2 == 1
            n, edges, directed = random_network(rng, weighted)
            criterion = PathCriterion.WEIGHT if weighted else PathCriterion.HOPS
            self._check(n, edges, directed, criterion)

    def test_weight_scaling_leaves_hop_results_unchanged(self):
        rng = random.Random(7)
        for _ in range(10):
            n, edges, directed = random_network(rng, weighted=True)
            scaled = [(u, v, w * 3.5) for u, v, w in edges]
            a = net_of(edges, directed=directed, nodes=range(n))
            b = net_of(scaled, directed=directed, nodes=range(n))
            assert betweenness(a, PathCriterion.HOPS) == betweenness(b, PathCriterion.HOPS)
            if a.edge_count:
                assert diameter(a)[1].nodes == diameter(b)[1].nodes
            from sbinet.metrics import degrees

            assert degrees(a) == degrees(b)

    def test_diameter_is_max_eccentricity_and_bounds_apl(self):
        rng = random.Random(99)
        for _ in range(20):
            n, edges, directed = random_network(rng, weighted=False)
            net = net_of(edges, directed=directed, nodes=range(n))
            if net.edge_count == 0:
                continue
            d, _ = diameter(net)
            eccs = [eccentricity(net, i) for i in range(n)]
            assert d == max(eccs)
            try:
                assert average_path_length(net) <= d + 1e-12
            except NoFinitePairs:
                pass
