import networkx as nx
import pytest

from core.errors import ValidationError
from core.pattern import complete
from core.qgraph import (
    QEdge,
    QGraph,
    SlicePair,
    double_slice,
    full_qgraph,
    low_layer,
    low_layer_size,
    low_threshold,
    s_sum_intersection,
    slice_graph,
    support_graph,
)
from services.construction_service import universal_tree


class TestQEdge:
    def test_oriented_puts_smaller_vertex_first(self):
        assert QEdge.oriented(3, 1, 2, 1) == QEdge(1, 3, 1, 2)
        assert QEdge.oriented(1, 3, 2, 1) == QEdge(1, 3, 2, 1)

    def test_weight_at_and_dense(self):
        edge = QEdge(1, 3, 2, 1)
        assert edge.weight_at(1) == 2
        assert edge.weight_at(3) == 1
        assert edge.weight_at(2) == 0
        assert edge.dense(4) == (2, 0, 1, 0)

    @pytest.mark.parametrize("edge", [QEdge(2, 2, 1, 1), QEdge(2, 1, 1, 1), QEdge(1, 4, 1, 1),
                                      QEdge(1, 2, 0, 1), QEdge(1, 2, 1, 3)])
    def test_check_rejects_invalid(self, edge):
        with pytest.raises(ValidationError):
            edge.check(3, 2)

    def test_s_sum_intersection(self):
        x = QEdge(1, 2, 2, 1)
        y = QEdge(2, 3, 2, 2)
        assert s_sum_intersection(x, y, 3) == {2}
        assert s_sum_intersection(x, y, 2) == {1, 2, 3}
        assert s_sum_intersection(x, y, 4) == set()

    def test_s_sum_intersection_symmetric_and_antitone(self, rng):
        for _ in range(200):
            x, y = (
                QEdge(*sorted(int(v) + 1 for v in rng.choice(4, size=2, replace=False)),
                      *(int(w) for w in rng.integers(1, 5, size=2)))
                for _ in range(2)
            )
            for s in range(1, 9):
                assert s_sum_intersection(x, y, s) == s_sum_intersection(y, x, s)
                assert s_sum_intersection(x, y, s + 1) <= s_sum_intersection(x, y, s)


class TestQGraph:
    def test_duplicates_collapse_and_order_is_irrelevant(self):
        a = QGraph.from_edges(3, 2, [(1, 2, 1, 1), (1, 2, 1, 1), (2, 3, 2, 1)])
        b = QGraph.from_edges(3, 2, [(2, 3, 2, 1), (1, 2, 1, 1)])
        assert len(a) == 2
        assert a == b
        assert list(a) == [QEdge(1, 2, 1, 1), QEdge(2, 3, 2, 1)]
        assert (2, 3, 2, 1) in a

    @pytest.mark.parametrize("n, q", [(-1, 2), (3, 0)])
    def test_invalid_parameters(self, n, q):
        with pytest.raises(ValidationError):
            QGraph(n, q)

    def test_edge_outside_space_rejected(self):
        with pytest.raises(ValidationError):
            QGraph.from_edges(3, 2, [(1, 2, 3, 1)])

    @pytest.mark.parametrize("n, q", [(2, 1), (3, 2), (4, 3)])
    def test_full_qgraph_size(self, n, q):
        assert len(full_qgraph(n, q)) == q * q * n * (n - 1) // 2

    def test_full_qgraph_needs_two_vertices(self):
        with pytest.raises(ValidationError):
            full_qgraph(1, 2)

    def test_set_operators_and_complement(self):
        full = full_qgraph(3, 2)
        host = QGraph.from_edges(3, 2, [(1, 2, 1, 1), (1, 3, 2, 2)])
        other = QGraph.from_edges(3, 2, [(1, 2, 1, 1), (2, 3, 1, 2)])
        assert len(host | other) == 3
        assert host & other == QGraph.from_edges(3, 2, [(1, 2, 1, 1)])
        assert host - other == QGraph.from_edges(3, 2, [(1, 3, 2, 2)])
        assert host | host.complement() == full
        assert not (host & host.complement()).edges
        assert QGraph(3, 2).complement() == full

    def test_operators_need_same_space(self):
        with pytest.raises(ValidationError):
            QGraph(3, 2) | QGraph(3, 3)
        with pytest.raises(ValidationError):
            QGraph(3, 2) - QGraph(4, 2)

    def test_relabel_keeps_weights_on_vertices(self):
        host = QGraph.from_edges(3, 2, [(1, 2, 1, 2)])
        swapped = host.relabel({1: 2, 2: 1, 3: 3})
        assert swapped == QGraph.from_edges(3, 2, [(1, 2, 2, 1)])

    def test_weights_on_respects_direction(self):
        host = QGraph.from_edges(3, 2, [(1, 2, 1, 2), (1, 2, 2, 2)])
        assert host.weights_on(1, 2) == [(1, 2), (2, 2)]
        assert host.weights_on(2, 1) == [(2, 1), (2, 2)]
        assert host.weights_on(1, 3) == []


class TestLayersAndSlices:
    @pytest.mark.parametrize("q, expected", [(1, 1), (2, 2), (3, 2), (4, 3), (5, 3)])
    def test_low_threshold(self, q, expected):
        assert low_threshold(q) == expected

    def test_low_layer(self):
        assert len(low_layer(full_qgraph(3, 3))) == 12 == low_layer_size(3, 3)
        layer = low_layer(full_qgraph(3, 2))
        assert all(e.a == e.b == 2 for e in layer)
        assert len(layer) == low_layer_size(3, 2) == 3

    def test_support_graph(self):
        host = QGraph.from_edges(4, 2, [(1, 2, 1, 1), (1, 2, 2, 1), (3, 4, 1, 1)])
        assert support_graph(host).edges == {(1, 2), (3, 4)}
        assert support_graph(host).n == 4

    def test_slice_pair_conjugate(self):
        assert SlicePair(1, 3).conjugate(3) == SlicePair(3, 1)
        assert SlicePair(2, 3).conjugate(3) == SlicePair(2, 1)
        assert SlicePair(1, 2).reversed() == SlicePair(2, 1)

    def test_slice_graph_orientation(self):
        host = QGraph.from_edges(3, 2, [(1, 2, 1, 2), (2, 3, 1, 1)])
        forward = slice_graph(host, SlicePair(1, 2))
        backward = slice_graph(host, SlicePair(2, 1))
        diagonal = slice_graph(host, SlicePair(1, 1))
        assert isinstance(forward, nx.DiGraph)
        assert set(forward.edges()) == {(1, 2)}
        assert set(backward.edges()) == {(2, 1)}
        assert not isinstance(diagonal, nx.DiGraph)
        assert {frozenset(e) for e in diagonal.edges()} == {frozenset((2, 3))}
        assert set(forward.nodes()) == {1, 2, 3}

    def test_double_slice(self):
        host = QGraph.from_edges(3, 2, [(1, 2, 1, 2)])
        assert double_slice(host, SlicePair(1, 2), SlicePair(2, 1)).number_of_edges() == 0
        host = host.with_edges([QEdge(1, 2, 2, 1)])
        graph = double_slice(host, SlicePair(1, 2), SlicePair(2, 1))
        assert {frozenset(e) for e in graph.edges()} == {frozenset((1, 2))}

    @pytest.mark.parametrize("q", [1, 2, 3, 4])
    def test_slices_partition_the_host(self, q, random_host):
        host = random_host(5, q, density=0.4)
        directed = sum(slice_graph(host, SlicePair(a, b)).number_of_edges()
                       for a in range(1, q + 1) for b in range(a + 1, q + 1))
        diagonal = sum(slice_graph(host, SlicePair(a, a)).number_of_edges() for a in range(1, q + 1))
        assert directed + diagonal == len(host)

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_low_layer_idempotent_and_monotone(self, q, rng, random_host):
        host = random_host(5, q, density=0.6)
        layer = low_layer(host)
        assert layer.edges <= host.edges
        assert low_layer(layer) == layer
        sub = QGraph(host.n, q, frozenset(e for e in host.edges if rng.random() < 0.5))
        assert low_layer(sub).edges <= layer.edges

    @pytest.mark.parametrize("n", [2, 3, 5, 6])
    def test_universal_tree_slice_is_transitive_tournament(self, n):
        graph = slice_graph(universal_tree(2, n), SlicePair(1, 2))
        assert set(graph.edges()) == {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        assert nx.is_directed_acyclic_graph(graph)

    def test_universal_tree_support_is_complete(self):
        assert support_graph(universal_tree(2, 4)) == complete(4)
