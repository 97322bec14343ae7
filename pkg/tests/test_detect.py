import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from core.errors import PatternError, ValidationError
from core.pattern import PatternGraph, complete, cycle, path, star
from core.qgraph import QEdge, QGraph, full_qgraph, support_graph
from services.acceptance_service import brute_force_contains
from services.construction_service import blowup, universal_tree
from services.detect_service import (
    CopySearch,
    Embedding,
    check_embedding,
    contains_s_copy,
    find_s_copies,
    iter_s_copies,
    verify_free,
)


class TestContainsCopy:
    def test_full_host_contains_heavy_triangle(self):
        host = full_qgraph(3, 2)
        witness = contains_s_copy(host, cycle(3), 3)
        assert witness is not None
        assert check_embedding(host, cycle(3), 3, witness)

    def test_universal_tree_is_triangle_free(self):
        assert contains_s_copy(universal_tree(2, 3), cycle(3), 3) is None

    def test_threshold_above_twice_q_never_fits(self):
        assert contains_s_copy(full_qgraph(4, 2), cycle(3), 5) is None

    def test_degree_one_vertices_are_unconstrained(self):
        host = QGraph.from_edges(2, 3, [(1, 2, 1, 1)])
        assert contains_s_copy(host, complete(2), 6) is not None

    def test_pattern_larger_than_host(self):
        assert contains_s_copy(full_qgraph(3, 2), cycle(4), 1) is None

    def test_edgeless_pattern(self):
        assert contains_s_copy(QGraph(3, 2), PatternGraph(2), 3) == Embedding({}, {})
        assert contains_s_copy(QGraph(1, 2), PatternGraph(2), 3) is None

    def test_invalid_arguments(self):
        with pytest.raises(ValidationError):
            contains_s_copy(full_qgraph(3, 2), cycle(3), 0)
        with pytest.raises(PatternError):
            contains_s_copy(full_qgraph(3, 2), PatternGraph(0), 3)

    def test_witness_serializes(self):
        witness = contains_s_copy(full_qgraph(3, 1), cycle(3), 2)
        data = witness.to_dict()
        assert sorted(data["vertex_map"]) == ["1", "2", "3"]
        assert len(data["edges"]) == 3
        assert len(witness.qgraph(3, 1)) == 3

    def test_isolated_pattern_vertices_are_not_mapped(self):
        pattern = PatternGraph.from_edges(4, [(1, 2), (2, 3)])
        host = full_qgraph(4, 1)
        witness = contains_s_copy(host, pattern, 2)
        assert set(witness.vertex_map) == {1, 2, 3}
        assert check_embedding(host, pattern, 2, witness)


class TestEnumeration:
    def test_all_labelled_triangles(self):
        found = find_s_copies(full_qgraph(3, 1), cycle(3), 2, limit=100)
        assert len(found) == 6
        assert len({e.key() for e in found}) == 6

    def test_limit(self):
        assert len(find_s_copies(full_qgraph(4, 2), path(3), 3, limit=5)) == 5
        with pytest.raises(ValidationError):
            find_s_copies(full_qgraph(3, 2), path(3), 3, limit=0)

    def test_enumerated_copies_are_valid_and_distinct(self):
        host = full_qgraph(4, 2)
        copies = list(iter_s_copies(host, star(3), 3))
        assert copies
        assert len({e.key() for e in copies}) == len(copies)
        assert all(check_embedding(host, star(3), 3, e) for e in copies)

    def test_search_is_single_use(self):
        search = CopySearch(full_qgraph(3, 1), cycle(3), 2)
        list(search.run())
        with pytest.raises(RuntimeError):
            list(search.run())


class TestOracle:
    def test_agrees_with_brute_force(self, rng, random_host, random_pattern):
        for _ in range(60):
            n = int(rng.integers(2, 6))
            q = int(rng.integers(1, 3))
            s = int(rng.integers(1, 2 * q + 1))
            host = random_host(n, q)
            pattern = random_pattern(int(rng.integers(2, 5)))
            fast = contains_s_copy(host, pattern, s)
            assert (fast is not None) == brute_force_contains(host, pattern, s)
            if fast is not None:
                assert check_embedding(host, pattern, s, fast)

    def test_maximal_pairs_do_not_change_existence(self, rng, random_host, random_pattern):
        for _ in range(40):
            host = random_host(4, 3, density=0.3)
            pattern = random_pattern(4)
            s = int(rng.integers(2, 7))
            full = next(CopySearch(host, pattern, s).run(), None)
            assert (full is None) == (contains_s_copy(host, pattern, s) is None)


class TestCertificates:
    def test_empty_host_is_free(self):
        assert verify_free(QGraph(5, 3), cycle(3), 4).free

    def test_blowup_of_triangle_is_not_free(self):
        host = blowup(complete(3), 2)
        certificate = verify_free(host, cycle(3), 3)
        assert not certificate.free
        assert check_embedding(host, cycle(3), 3, certificate.witness)
        assert certificate.to_dict()["witness"] is not None

    def test_check_embedding_rejects_light_vertex(self):
        host = full_qgraph(3, 2)
        light = Embedding(
            {1: 1, 2: 2, 3: 3},
            {(1, 2): QEdge(1, 2, 1, 2), (2, 3): QEdge(2, 3, 2, 2), (1, 3): QEdge(1, 3, 1, 2)},
        )
        assert not check_embedding(host, cycle(3), 3, light)
        heavy = Embedding(
            {1: 1, 2: 2, 3: 3},
            {(1, 2): QEdge(1, 2, 2, 2), (2, 3): QEdge(2, 3, 2, 2), (1, 3): QEdge(1, 3, 2, 2)},
        )
        assert check_embedding(host, cycle(3), 3, heavy)


class TestContainmentProperties:
    def test_vectors_summing_to_four_form_a_triangle(self):
        host = QGraph.from_edges(5, 3, [(1, 2, 1, 3), (2, 5, 1, 3), (1, 5, 3, 1)])
        witness = contains_s_copy(host, cycle(3), 4)
        assert witness is not None
        assert set(witness.vertex_map.values()) == {1, 2, 5}

    def test_light_shared_coordinate_breaks_the_triangle(self):
        host = QGraph.from_edges(3, 3, [(1, 2, 3, 1), (2, 3, 1, 3), (1, 3, 3, 1)])
        assert contains_s_copy(host, cycle(3), 4) is None
        assert contains_s_copy(host, cycle(3), 2) is not None

    def test_invariant_under_relabelling(self, rng, random_host, random_pattern):
        for _ in range(30):
            host = random_host(5, 2, density=0.4)
            pattern = random_pattern(int(rng.integers(2, 5)))
            s = int(rng.integers(2, 5))
            perm = dict(zip(range(1, 6), (int(x) + 1 for x in rng.permutation(5))))
            found = contains_s_copy(host, pattern, s) is not None
            assert (contains_s_copy(host.relabel(perm), pattern, s) is not None) == found

    def test_monotone_in_threshold(self, rng, random_host, random_pattern):
        for _ in range(30):
            host = random_host(5, 3, density=0.3)
            pattern = random_pattern(int(rng.integers(2, 5)))
            found = [contains_s_copy(host, pattern, s) is not None for s in range(1, 8)]
            assert found == sorted(found, reverse=True)

    def test_monotone_in_host(self, rng, random_host, random_pattern):
        for _ in range(30):
            host = random_host(5, 2, density=0.5)
            sub = QGraph(host.n, host.q, frozenset(e for e in host.edges if rng.random() < 0.6))
            pattern = random_pattern(int(rng.integers(2, 5)))
            s = int(rng.integers(2, 5))
            if contains_s_copy(sub, pattern, s) is not None:
                assert contains_s_copy(host, pattern, s) is not None

    def test_single_weight_matches_subgraph_containment(self, rng, random_host, random_pattern):
        for _ in range(40):
            host = random_host(int(rng.integers(3, 7)), 1, density=0.5)
            pattern = random_pattern(int(rng.integers(2, 5)))
            matcher = GraphMatcher(support_graph(host).to_networkx(), pattern.to_networkx())
            expected = host.n >= pattern.n and matcher.subgraph_is_monomorphic()
            assert (contains_s_copy(host, pattern, 2) is not None) == expected
