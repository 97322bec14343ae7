import time
from math import comb

import pytest

from core.errors import InstanceTooLarge, PatternError, ValidationError
from core.pattern import PatternGraph, complete, cycle, path
from core.qgraph import QGraph
from services.detect_service import contains_s_copy, verify_free
from services.extremal_service import (
    STATUS_EXACT,
    STATUS_LOWER_BOUND,
    STATUS_TIMEOUT,
    HittingSetSearch,
    _solve_branch,
    extremal_number,
    forbidden_configs,
    maximality_certificate,
    ordinary_turan,
    upper_bound_low_layer,
)


class TestForbiddenConfigs:
    def test_triangle_hyperedges_are_copies(self):
        hypergraph = forbidden_configs(3, 2, cycle(3), 3)
        assert hypergraph.hyperedges
        for edges in hypergraph.hyperedges:
            assert len(edges) == 3
            assert contains_s_copy(QGraph(3, 2, edges), cycle(3), 3) is not None

    def test_no_room_for_four_cycle(self):
        assert forbidden_configs(3, 2, cycle(4), 3).hyperedges == []

    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_single_edge_pattern(self, q):
        hypergraph = forbidden_configs(3, q, complete(2), 2)
        assert len(hypergraph.hyperedges) == 3 * q * q
        assert all(len(h) == 1 for h in hypergraph.hyperedges)

    def test_size_guards(self):
        with pytest.raises(InstanceTooLarge):
            forbidden_configs(4, 2, cycle(3), 3, max_ground=10)
        with pytest.raises(InstanceTooLarge):
            forbidden_configs(4, 2, cycle(3), 3, max_hyperedges=2)


class TestExtremalNumber:
    @pytest.mark.parametrize("n, q, expected", [(3, 2, 8), (3, 3, 18)])
    def test_triangle_values(self, n, q, expected):
        result = extremal_number(n, cycle(3), q, q + 1)
        assert result.value == expected
        assert result.status == STATUS_EXACT
        assert len(result.witness) == expected
        assert verify_free(result.witness, cycle(3), q + 1).free

    @pytest.mark.slow
    def test_triangle_on_four_vertices(self):
        result = extremal_number(4, cycle(3), 2, 3)
        assert result.value == 16
        assert result.status == STATUS_EXACT
        assert 2 * result.value <= 4 * extremal_number(3, cycle(3), 2, 3).value

    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_single_edge_pattern_forbids_everything(self, q):
        result = extremal_number(3, complete(2), q, 2)
        assert result.value == 0
        assert result.status == STATUS_EXACT

    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_two_vertices_hold_no_triangle(self, q):
        assert extremal_number(2, cycle(3), q, q + 1).value == q * q

    def test_monotone_in_s(self):
        values = [extremal_number(3, cycle(3), 2, s).value for s in (2, 3, 4)]
        assert values == sorted(values)
        assert values[1:] == [8, 11]

    @pytest.mark.parametrize("q, top", [(1, 5), pytest.param(2, 4, marks=pytest.mark.slow)])
    def test_monotone_in_n(self, q, top):
        results = [extremal_number(n, cycle(3), q, q + 1) for n in range(2, top + 1)]
        assert all(r.status == STATUS_EXACT for r in results)
        values = [r.value for r in results]
        assert values == sorted(values)
        assert values[0] == q * q

    def test_symmetry_does_not_change_value(self):
        plain = extremal_number(3, cycle(3), 2, 3, symmetry=False)
        assert plain.value == 8
        assert plain.status == STATUS_EXACT

    def test_parallel_branches_agree(self):
        assert extremal_number(3, cycle(3), 2, 3, jobs=2).value == 8

    def test_node_budget_gives_lower_bound(self):
        result = extremal_number(4, cycle(3), 2, 3, budget_nodes=1)
        assert result.status == STATUS_LOWER_BOUND
        assert result.value <= 16
        assert verify_free(result.witness, cycle(3), 3).free

    def test_time_budget_gives_timeout(self):
        result = extremal_number(4, cycle(3), 2, 3, budget_secs=1e-9)
        assert result.status == STATUS_TIMEOUT
        assert result.value <= 16
        assert verify_free(result.witness, cycle(3), 3).free

    def test_time_budget_is_global_across_workers(self):
        result = extremal_number(4, cycle(3), 2, 3, budget_secs=1e-9, jobs=2)
        assert result.status == STATUS_TIMEOUT
        assert verify_free(result.witness, cycle(3), 3).free

    def test_generous_budget_is_exact(self):
        result = extremal_number(3, cycle(3), 2, 3, budget_nodes=10_000, budget_secs=60)
        assert result.status == STATUS_EXACT

    @pytest.mark.parametrize("kwargs", [{"budget_nodes": 0}, {"budget_secs": -1.0}])
    def test_budget_must_be_positive(self, kwargs):
        with pytest.raises(ValidationError):
            extremal_number(3, cycle(3), 2, 3, **kwargs)

    def test_edgeless_pattern(self):
        with pytest.raises(PatternError):
            extremal_number(3, PatternGraph(2), 2, 3)
        result = extremal_number(2, PatternGraph(3), 2, 3)
        assert result.value == 4

    def test_result_serializes(self):
        data = extremal_number(3, cycle(3), 2, 3).to_dict()
        assert data["value"] == 8
        assert data["status"] == "exact"
        assert len(data["witness"]["edges"]) == 8

    def test_maximality_certificate(self):
        result = extremal_number(3, cycle(3), 2, 3)
        certificate = maximality_certificate(result, cycle(3), 3)
        assert len(certificate) == 12 - 8
        assert all(embedding is not None for _, embedding in certificate)


class TestOrdinaryTuran:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_mantel(self, n):
        result = ordinary_turan(n, cycle(3))
        assert result.value == n * n // 4
        assert result.status == STATUS_EXACT

    def test_matching_is_extremal_for_cherries(self):
        assert ordinary_turan(5, path(3)).value == 2

    def test_single_edge(self):
        assert ordinary_turan(3, complete(2)).value == 0

    @pytest.mark.parametrize("q", [2, 3])
    def test_sandwich(self, q):
        value = extremal_number(3, cycle(3), q, q + 1).value
        assert q * q * ordinary_turan(3, cycle(3)).value <= value <= q * q * comb(3, 2)
        assert value <= upper_bound_low_layer(3, cycle(3), q)


class TestHittingSetSearch:
    def test_greedy_cover_is_a_cover(self):
        search = HittingSetSearch(4, [(0, 1), (1, 2), (2, 3)], None, None)
        mask, count = search.greedy_cover()
        assert all(mask >> a & 1 or mask >> b & 1 for a, b in [(0, 1), (1, 2), (2, 3)])
        assert count == bin(mask).count("1")

    def test_search_finds_minimum(self):
        hyperedges = [(0, 1), (0, 2), (1, 2), (3, 4)]
        search = HittingSetSearch(5, hyperedges, None, None)
        search.search(0, 0, 0)
        assert search.best_count == 3
        assert search.stopped is None

    def test_elapsed_time_counts_from_given_start(self):
        search = HittingSetSearch(4, [(0, 1), (1, 2), (2, 3)], None, 5.0, started=time.time() - 10)
        search.search(0, 0, 0)
        assert search.stopped == STATUS_TIMEOUT
        assert search.nodes == 0

    def test_branch_worker_uses_parent_start(self):
        task = {"size": 4, "hyperedges": [(0, 1), (1, 2), (2, 3)], "rep": 1, "kept": 0,
                "budget_nodes": None, "budget_secs": 5.0, "started": time.time() - 10}
        outcome = _solve_branch(task)
        assert outcome["stopped"] == STATUS_TIMEOUT
        assert outcome["nodes"] == 0
