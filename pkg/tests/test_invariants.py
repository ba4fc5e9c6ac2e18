import math
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactcones.invariants import (
    HypothesisViolation,
    _sqrt_floor,
    bound_report,
    conngon_bounds,
    conngon_table,
    covgon_bounds,
    exceptional_n,
    expected_cone_dim,
    family_dim_lower_bounds,
    fano_max_h,
    irr_bounds,
    lambda_canonical_twist,
    moduli_dimensions,
)

GOLDEN = Path(__file__).parent / "golden" / "conngon_table.csv"


class TestSqrtFloor:
    @given(st.integers(0, 10 ** 18), st.integers(-5, 5))
    def test_definition(self, m, shift):
        r = _sqrt_floor(m, shift)
        # r = floor((sqrt(m)+shift)/2) means 2r - shift <= sqrt(m) < 2(r+1) - shift
        lo = 2 * r - shift
        hi = 2 * (r + 1) - shift
        assert lo <= 0 or lo * lo <= m
        assert hi > 0 and m < hi * hi

    def test_float_would_fail_here(self):
        # (10^8 + 1)^2 - 1 rounds up under float sqrt
        m = (10 ** 8 + 1) ** 2 - 1
        assert _sqrt_floor(m, 0) == 10 ** 8 // 2


class TestClosedFormBounds:
    def test_cone_dim(self):
        assert expected_cone_dim(4, 2) == 4
        assert expected_cone_dim(4, 5) == 1
        with pytest.raises(ValueError):
            expected_cone_dim(4, 6)

    def test_covgon_frozen_values(self):
        assert covgon_bounds(2, 20) == (18, 18)
        assert covgon_bounds(4, 10) == (7, 7)
        assert covgon_bounds(9, 20) == (15, 15)

    def test_conngon_frozen_values(self):
        assert conngon_bounds(4, 10) == (7, 7, 7)
        assert conngon_bounds(5, 12) == (9, 9, 9)
        # n = 9 sits in a one-apart window, no exact value
        assert conngon_bounds(9, 20) == (15, 16, None)

    def test_conngon_within_covgon_window(self):
        for n in range(4, 60):
            d = 2 * n + 2
            c_lo, c_hi = covgon_bounds(n, d)
            g_lo, g_hi, _ = conngon_bounds(n, d)
            assert g_lo >= c_lo
            assert g_hi <= d - 1

    def test_irr_bounds(self):
        lower, exact = irr_bounds(4, 10, 4)
        assert (lower, exact) == (9, 9)
        lower, exact = irr_bounds(4, 10, 1)
        assert lower == 6 and exact is None

    def test_hypothesis_violations(self):
        with pytest.raises(HypothesisViolation):
            covgon_bounds(4, 9)
        with pytest.raises(HypothesisViolation):
            conngon_bounds(3, 10)
        with pytest.raises(HypothesisViolation):
            irr_bounds(2, 10, 1)

    def test_permissive_mode_still_computes(self):
        lo, hi = covgon_bounds(4, 9, permissive=True)
        assert lo <= hi


class TestFano:
    def test_threshold_values(self):
        # largest h with h(h-1)/2 - 1 <= n - 1
        assert fano_max_h(2) == 2
        assert fano_max_h(3) == 3
        assert fano_max_h(5) == 3
        assert fano_max_h(6) == 4
        assert fano_max_h(10) == 5

    def test_twist_sign_matches_threshold(self):
        for n in range(2, 40):
            h = fano_max_h(n)
            if h >= 3:
                assert lambda_canonical_twist(n, h) < 0
            # h+1 hits the Calabi-Yau boundary or general type
            assert lambda_canonical_twist(n, h + 1) >= 0

    def test_twist_needs_h_three(self):
        with pytest.raises(ValueError):
            lambda_canonical_twist(5, 2)


class TestExceptional:
    @staticmethod
    def floor_coincidence(n):
        return (math.isqrt(16 * n + 1) - 1) // 2 == \
            (math.isqrt(16 * n + 25) - 3) // 2

    def test_matches_floor_coincidence_small(self):
        for n in range(4, 3000):
            assert exceptional_n(n) == self.floor_coincidence(n), n

    def test_first_members(self):
        hits = [n for n in range(4, 60) if exceptional_n(n)]
        assert hits[:6] == [4, 6, 7, 9, 10, 13]

    def test_starts_at_four(self):
        with pytest.raises(ValueError):
            exceptional_n(3)


class TestModuli:
    def test_identities_hold_in_range(self):
        for n in range(1, 8):
            for d in range(2, 16):
                for h in range(2, min(n + 1, d) + 1):
                    dims = moduli_dimensions(n, d, h)
                    assert dims.dim_W == dims.dim_J - dims.fiber_f
                    assert dims.dim_BoxF == dims.dim_Box - (dims.N + 1)

    def test_frozen_example(self):
        dims = moduli_dimensions(3, 8, 3)
        assert dims.N == math.comb(8 + 4, 8) - 1
        assert dims.dim_L == math.comb(12, 4) - 1
        assert dims.dim_J == math.comb(12, 8) + 3
        assert dims.fiber_f == sum(math.comb(3 + j, j) for j in range(3, 9))
        assert dims.dim_W == math.comb(6, 2) + 3
        assert dims.dim_BoxF == 3 * 3 + 2 - 6

    def test_h_range_enforced(self):
        with pytest.raises(ValueError):
            moduli_dimensions(3, 8, 5)

    def test_family_bounds(self):
        assert family_dim_lower_bounds(5, 2, connecting=False) == 3
        assert family_dim_lower_bounds(5, 2, connecting=True) == 6
        with pytest.raises(ValueError):
            family_dim_lower_bounds(5, 6, connecting=False)


class TestConngonTable:
    def test_rows_match_golden_content(self):
        rows = conngon_table(1, 16)
        golden = GOLDEN.read_text().strip().splitlines()[1:]
        assert len(rows) == len(golden)
        for row, line in zip(rows, golden):
            n, status, lower, upper, origin = line.split(",")
            assert row.n == int(n)
            assert row.status == status
            assert row.lower == lower
            assert row.upper == upper
            assert row.origin == origin

    def test_interval_rows(self):
        rows = {r.n: r for r in conngon_table(1, 16)}
        assert {n for n, r in rows.items() if r.status == "interval"} == {9, 13, 14}

    def test_small_rows_are_hard_coded(self):
        rows = {r.n: r for r in conngon_table(1, 3)}
        assert rows[1].lower == "d-1"
        assert rows[2].lower == "d-2"
        assert rows[3].lower == "d-2"

    def test_range_validation(self):
        with pytest.raises(ValueError):
            conngon_table(0, 5)
        with pytest.raises(ValueError):
            conngon_table(5, 4)


class TestBoundReport:
    def test_full_report(self):
        rep = bound_report(4, 10)
        assert rep.covgon_lower == rep.covgon_upper == 7
        assert rep.conngon_exact == 7
        assert rep.irr_lower == (6, 7, 8, 9)
        assert rep.fano_h == 3
        assert rep.notes == ()

    def test_permissive_report_carries_notes(self):
        rep = bound_report(4, 9, permissive=True)
        assert rep.notes

    def test_chain_consistency(self):
        for n in range(4, 12):
            d = 2 * n + 2
            rep = bound_report(n, d)
            assert rep.covgon_lower <= rep.covgon_upper
            assert rep.conngon_lower <= rep.conngon_upper
            assert rep.covgon_lower <= rep.conngon_upper
