import pytest

from conftest import net_of
from oracles import max_modularity, modularity_matrix
from sbinet.community import detect_communities, modularity
from sbinet.errors import EmptyEdgeSet, InvalidPartition

TRIANGLE_A = [(0, 1), (1, 2), (0, 2)]
TRIANGLE_B = [(3, 4), (4, 5), (3, 5)]
TWO_TRIANGLES = TRIANGLE_A + TRIANGLE_B
BRIDGED = TWO_TRIANGLES + [(2, 3)]


def clique(nodes):
    nodes = list(nodes)
    return [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1 :]]


def barbell(k, path_len):
    """Two k-cliques joined by a path of `path_len` intermediate nodes."""
    left = clique(range(k))
    right = clique(range(k + path_len, 2 * k + path_len))
    chain = list(range(k - 1, k + path_len + 1))
    path = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return left + right + path


class TestModularity:
    def test_two_disjoint_triangles_by_component(self):
        net = net_of(TWO_TRIANGLES)
        partition = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
        assert modularity(net, partition) == pytest.approx(0.5, abs=1e-12)

    def test_single_community_is_zero(self):
        net = net_of(BRIDGED)
        assert modularity(net, {k: 0 for k in range(6)}) == pytest.approx(0.0, abs=1e-12)

    def test_singletons_of_triangle(self):
        net = net_of(TRIANGLE_A)
        assert modularity(net, {0: 0, 1: 1, 2: 2}) == pytest.approx(-1 / 3, abs=1e-12)

    def test_partition_must_cover_nodes(self):
        net = net_of(TRIANGLE_A)
        with pytest.raises(InvalidPartition):
            modularity(net, {0: 0, 1: 0})

    def test_agrees_with_pairwise_oracle(self):
        net = net_of(BRIDGED)
        for membership in [[0, 0, 0, 1, 1, 1], [0, 1, 0, 1, 0, 1], [0, 0, 1, 1, 2, 2]]:
            partition = dict(enumerate(membership))
            expected = modularity_matrix(6, [(u, v, 1.0) for u, v in BRIDGED], membership)
            assert modularity(net, partition) == pytest.approx(expected, abs=1e-12)


class TestDetectCommunities:
    def test_bridged_triangles_split_at_the_bridge(self):
        result = detect_communities(net_of(BRIDGED))
        assert result.membership == {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
        assert result.q == pytest.approx(max_modularity(6, [(u, v, 1.0) for u, v in BRIDGED]), abs=1e-9)

    def test_disjoint_triangles(self):
        result = detect_communities(net_of(TWO_TRIANGLES))
        assert result.community_count == 2
        assert result.q == pytest.approx(0.5, abs=1e-12)

    def test_clique_stays_whole(self):
        result = detect_communities(net_of(clique(range(4))))
        assert result.community_count == 1
        assert result.q == pytest.approx(max_modularity(4, [(u, v, 1.0) for u, v in clique(range(4))]), abs=1e-9)

    def test_reported_q_equals_modularity_of_partition(self):
        for edges in (BRIDGED, TWO_TRIANGLES, barbell(3, 2)):
            net = net_of(edges)
            result = detect_communities(net)
            assert result.q == pytest.approx(modularity(net, result.membership), abs=1e-12)

    def test_labels_contiguous_from_zero(self):
        result = detect_communities(net_of(barbell(4, 2)))
        labels = set(result.membership.values())
        assert labels == set(range(len(labels)))

    def test_deterministic(self):
        runs = [detect_communities(net_of(barbell(4, 2))).membership for _ in range(3)]
        assert runs[0] == runs[1] == runs[2]

    def test_empty_edge_set(self):
        with pytest.raises(EmptyEdgeSet):
            detect_communities(net_of([], nodes=["a", "b"]))

    def test_weight_scaling_leaves_partition_unchanged(self):
        base = [(u, v, 2.0) for u, v in barbell(3, 1)]
        scaled = [(u, v, w * 7.5) for u, v, w in base]
        assert (
            detect_communities(net_of(base)).membership
            == detect_communities(net_of(scaled)).membership
        )
