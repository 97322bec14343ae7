import pytest

from core.errors import CapExceeded, FormatError, ValidationError
from services.wstar_service import (
    WeightFunction,
    check_star,
    degree,
    format_wstar,
    max_star_weight,
    parse_wstar,
    quarter_split,
    quarter_split_weight,
    read_wstar,
    symmetrize,
    total_weight,
    write_wstar,
    zykov_shift,
)


def _function(k, **overrides):
    """Все пары 2, кроме перечисленных как w_12=3."""
    weights = {}
    for u in range(1, k + 1):
        for v in range(u + 1, k + 1):
            weights[(u, v)] = overrides.get(f"w_{u}{v}", 2)
    return WeightFunction.from_mapping(k, weights)


class TestWeightFunction:
    def test_rejects_forbidden_weight(self):
        with pytest.raises(ValidationError):
            WeightFunction(3, (1, 2, 2))

    def test_rejects_wrong_length(self):
        with pytest.raises(ValidationError):
            WeightFunction(3, (2, 2))

    def test_mapping_must_be_total(self):
        with pytest.raises(ValidationError):
            WeightFunction.from_mapping(3, {(1, 2): 2, (1, 3): 2})

    def test_mapping_accepts_reversed_pairs(self):
        w = WeightFunction.from_mapping(3, {(2, 1): 3, (3, 1): 0, (3, 2): 2})
        assert w.weight(1, 2) == 3
        assert w.weight(3, 1) == 0

    def test_degree_and_total(self):
        w = _function(4, w_12=3, w_34=0)
        assert degree(w, 1) == 7
        assert degree(w, 3) == 4
        assert total_weight(w) == 11
        with pytest.raises(ValidationError):
            degree(w, 5)


class TestStarCondition:
    def test_all_twos_is_fine(self):
        assert check_star(WeightFunction.constant(6, 2)).ok

    def test_heavy_triangle(self):
        result = check_star(WeightFunction.constant(3, 3))
        assert not result.ok
        assert result.kind == "triangle"
        assert result.vertices == (1, 2, 3)

    def test_heavy_c4_needs_a_zero_diagonal(self):
        ring = dict(w_12=3, w_23=3, w_34=3, w_14=3)
        bad = check_star(_function(4, **ring))
        assert not bad.ok and bad.kind == "c4"
        assert check_star(_function(4, w_13=0, **ring)).ok
        assert check_star(_function(4, w_24=0, **ring)).ok

    def test_to_dict(self):
        assert check_star(WeightFunction.constant(2, 3)).to_dict() == {"ok": True, "kind": None, "vertices": None}


class TestZykovShift:
    def test_copies_neighbourhood(self):
        w = _function(4, w_12=3, w_23=0, w_24=3)
        shifted = zykov_shift(w, 1, 2)
        assert shifted.weight(1, 2) == 0
        assert shifted.weight(1, 3) == w.weight(2, 3)
        assert shifted.weight(1, 4) == w.weight(2, 4)
        assert shifted.weight(3, 4) == w.weight(3, 4)

    def test_weight_change_identity(self, rng, random_star):
        for _ in range(200):
            k = int(rng.integers(2, 7))
            w = random_star(k)
            u, v = (int(x) + 1 for x in rng.choice(k, size=2, replace=False))
            shifted = zykov_shift(w, u, v)
            assert total_weight(shifted) - total_weight(w) == degree(w, v) - degree(w, u) - w.weight(u, v)

    def test_preserves_star_condition(self, rng, random_star):
        for _ in range(300):
            k = int(rng.integers(2, 7))
            w = random_star(k)
            u, v = (int(x) + 1 for x in rng.choice(k, size=2, replace=False))
            assert check_star(zykov_shift(w, u, v)).ok

    def test_twins_are_fixed(self):
        w = _function(4, w_12=0, w_13=3, w_23=3)
        assert zykov_shift(w, 1, 2) == w

    def test_same_vertex(self):
        with pytest.raises(ValidationError):
            zykov_shift(WeightFunction.constant(3, 2), 2, 2)

    def test_symmetrize_does_not_lose_weight(self, random_star):
        for k in (3, 4, 5, 6):
            w = random_star(k)
            result = symmetrize(w)
            assert check_star(result).ok
            assert total_weight(result) >= total_weight(w)

    def test_symmetrize_rejects_bad_input(self):
        with pytest.raises(ValidationError):
            symmetrize(WeightFunction.constant(3, 3))


class TestMaximum:
    @pytest.mark.parametrize("method", ["scan", "branch"])
    @pytest.mark.parametrize("k, expected", [(2, 3), (3, 8), (4, 15)])
    def test_small_values(self, k, expected, method):
        value, witness = max_star_weight(k, method=method)
        assert value == expected
        assert total_weight(witness) == expected
        assert check_star(witness).ok

    def test_scan_and_branch_agree(self):
        assert max_star_weight(5, method="scan")[0] == max_star_weight(5, method="branch")[0]

    @pytest.mark.slow
    def test_six_vertices(self):
        value, witness = max_star_weight(6)
        assert value >= quarter_split_weight(6) == 35
        assert check_star(witness).ok

    def test_trivial_sizes(self):
        assert max_star_weight(0) == (0, WeightFunction(0, ()))
        assert max_star_weight(1)[0] == 0

    def test_caps(self):
        with pytest.raises(CapExceeded):
            max_star_weight(6, method="scan")
        with pytest.raises(CapExceeded):
            max_star_weight(8)
        with pytest.raises(ValidationError):
            max_star_weight(3, method="guess")

    @pytest.mark.parametrize("k", range(2, 13))
    def test_quarter_split(self, k):
        w = quarter_split(k)
        assert check_star(w).ok
        assert total_weight(w) == quarter_split_weight(k)


class TestFormat:
    def test_parse(self):
        w = parse_wstar("wstar k=3\n1 2 3\n2 3 2  # comment\n1 3 0\n")
        assert w.as_mapping() == {(1, 2): 3, (1, 3): 0, (2, 3): 2}
        assert format_wstar(w) == "wstar k=3\n1 2 3\n1 3 0\n2 3 2\n"

    @pytest.mark.parametrize("text, line", [
        ("wstar k=3\n1 2 3\n1 3 1\n2 3 2\n", 3),
        ("wstar k=3\n1 2 3\n1 2 2\n", 3),
        ("wstar k=3\n1 1 3\n", 2),
        ("wstar n=3\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(FormatError) as error:
            parse_wstar(text)
        assert error.value.line == line

    def test_not_total(self):
        with pytest.raises(FormatError, match="missing pair 2 3"):
            parse_wstar("wstar k=3\n1 2 3\n1 3 0\n")

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "w.ws"
        write_wstar(quarter_split(5), path)
        assert read_wstar(path) == quarter_split(5)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FormatError):
            read_wstar(tmp_path / "absent.ws")
