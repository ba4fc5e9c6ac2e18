import random

import pytest

from contactcones.polyring import Polynomial, field_for, parse_poly
from contactcones.sampler import random_hypersurface
from contactcones.solvers import (
    DegenerateSystem,
    binary_form_roots,
    exhaustive_projective_solutions,
    iter_projective_points,
    projective_point_count,
    quaternary_triple_solutions,
    resultant_wrt_x2,
    ternary_pair_solutions,
    ternary_system_solutions,
    vectorized_projective_solutions,
)


def P(text, nvars, q):
    return parse_poly(text, nvars, q)


def random_form(nvars, d, q, seed, allow_zero=False):
    rng = random.Random(seed)
    fld = field_for(q)
    from contactcones.grobner import monomials_of_degree
    terms = {}
    for e in monomials_of_degree(nvars, d):
        c = rng.randrange(q)
        if c:
            terms[e] = c
    if not terms and not allow_zero:
        terms[(d,) + (0,) * (nvars - 1)] = 1
    return Polynomial(fld, nvars, terms)


class TestProjectiveEnumeration:
    def test_point_count_formula(self):
        for nvars in (2, 3, 4):
            for q in (3, 5, 11):
                pts = list(iter_projective_points(nvars, q))
                assert len(pts) == projective_point_count(nvars, q)
                assert len(pts) == (q ** nvars - 1) // (q - 1)
                assert len(set(pts)) == len(pts)

    def test_points_are_normalized(self):
        for pt in iter_projective_points(3, 5):
            lead = next(c for c in pt if c)
            assert lead == 1


class TestBinaryFormRoots:
    def test_matches_scan(self):
        q = 11
        for seed in range(10):
            B = random_form(2, 4, q, seed)
            expected = sorted(
                pt for pt in iter_projective_points(2, q)
                if B.evaluate(pt) == 0)
            assert binary_form_roots(B) == expected

    def test_root_at_infinity(self):
        q = 11
        B = P("x0*x1", 2, q)  # roots (1,0) and (0,1)
        assert binary_form_roots(B) == [(0, 1), (1, 0)]

    def test_zero_form_rejected(self):
        with pytest.raises(ValueError, match="nonzero binary form"):
            binary_form_roots(Polynomial.zero(field_for(11), 2))


class TestTernarySolvers:
    def test_pair_matches_exhaustive(self):
        q = 13
        for seed in range(8):
            g = random_form(3, 2 + seed % 2, q, seed)
            h = random_form(3, 2 + (seed + 1) % 2, q, 100 + seed)
            try:
                got = ternary_pair_solutions(g, h)
            except DegenerateSystem:
                continue
            assert sorted(got) == sorted(exhaustive_projective_solutions([g, h]))

    def test_shared_factor_degenerates(self):
        q = 13
        g = P("x0*x2 + x1*x2", 3, q).mul(P("x0", 3, q))
        h = P("x0^2", 3, q)
        with pytest.raises(DegenerateSystem):
            ternary_pair_solutions(g, h)

    def test_system_with_three_forms(self):
        q = 13
        for seed in range(6):
            forms = [random_form(3, 2, q, 31 * seed + k) for k in range(3)]
            got = ternary_system_solutions(forms)
            assert sorted(got) == sorted(exhaustive_projective_solutions(forms))

    def test_small_field_guard(self):
        # interpolation nodes exceed the field; the guard names the way out
        q = 3
        g = random_form(3, 3, q, 1)
        h = random_form(3, 3, q, 2)
        with pytest.raises(ValueError, match="exhaustive"):
            resultant_wrt_x2(g, h)


class TestQuaternarySolver:
    def test_matches_exhaustive_small_fields(self):
        for q, seeds in ((11, range(6)), (13, range(4))):
            for seed in seeds:
                f = random_form(4, 2, q, 7 * seed)
                g = random_form(4, 2 + seed % 2, q, 7 * seed + 1)
                h = random_form(4, 2, q, 7 * seed + 2)
                try:
                    got = quaternary_triple_solutions(f, g, h)
                except DegenerateSystem:
                    continue
                assert sorted(got) == sorted(exhaustive_projective_solutions([f, g, h]))

    def test_planted_common_zero_large_field(self):
        q = 101
        pt = (1, 7, 22, 60)
        forms = []
        for seed in range(3):
            base = random_form(4, 3, q, 400 + seed)
            val = base.evaluate(pt)
            # subtract val * x3^3 / pt3^3 so pt lies on the corrected form
            corr = val * pow(pt[3], -3, q) % q
            forms.append(base.sub(Polynomial.monomial(
                field_for(q), (0, 0, 0, 3), corr)))
        got = quaternary_triple_solutions(*forms)
        from contactcones.solvers import _normalize_proj
        assert _normalize_proj(pt, q) in got
        for sol in got:
            for f in forms:
                assert f.evaluate(sol) == 0

    def test_axis_point_outside_pencil(self):
        # (0:0:z:1) never meets the resultant argument; separate sweep
        q = 101
        A = random_form(4, 2, q, 11)
        B = random_form(4, 2, q, 12)
        C = random_form(4, 2, q, 13)
        x0 = Polynomial.variable(field_for(q), 4, 0)
        x1 = Polynomial.variable(field_for(q), 4, 1)
        f = x0.mul(A)
        g = x1.mul(B)
        h = P("x2 - 5*x3", 4, q).mul(C)
        got = quaternary_triple_solutions(f, g, h)
        assert (0, 0, 1, pow(5, -1, q) % q) in got or (0, 0, 5, 1) in [
            tuple(int(c) * pow(5, -1, q) % q if False else int(c) for c in s)
            for s in got] or (0, 0, 1, 41) in got
        # normalized representative of (0:0:5:1)
        from contactcones.solvers import _normalize_proj
        assert _normalize_proj((0, 0, 5, 1), q) in got

    def test_shared_plane_degenerates(self):
        q = 11
        x3 = Polynomial.variable(field_for(q), 4, 3)
        forms = [x3.mul(random_form(4, 2, q, 70 + k)) for k in range(3)]
        with pytest.raises(DegenerateSystem):
            quaternary_triple_solutions(*forms)

    def test_zero_form_rejected(self):
        q = 11
        f = random_form(4, 2, q, 1)
        with pytest.raises(ValueError, match="nonzero"):
            quaternary_triple_solutions(f, Polynomial.zero(field_for(q), 4), f)

    def test_small_field_guard(self):
        q = 5
        forms = [random_form(4, 4, q, 80 + k) for k in range(3)]
        with pytest.raises(ValueError, match="exhaustive"):
            quaternary_triple_solutions(*forms)


class TestVectorizedScan:
    def test_matches_exhaustive(self):
        q = 7
        for nvars in (3, 4):
            for seed in range(4):
                forms = [random_form(nvars, 2, q, 500 + 10 * seed + k)
                         for k in range(2)]
                got = vectorized_projective_solutions(forms)
                assert sorted(got) == sorted(exhaustive_projective_solutions(forms))

    def test_five_variables(self):
        q = 5
        forms = [random_form(5, 2, q, 900 + k) for k in range(3)]
        assert sorted(vectorized_projective_solutions(forms)) == \
            sorted(exhaustive_projective_solutions(forms))

    def test_cap_guard(self):
        q = 10007
        forms = [random_form(3, 2, q, 1)]
        with pytest.raises(ValueError):
            vectorized_projective_solutions(forms, cap=100)

    def test_exhaustive_cap_guard(self):
        q = 10007
        forms = [random_form(3, 2, q, 1)]
        with pytest.raises(ValueError):
            exhaustive_projective_solutions(forms, cap=100)


class TestAgainstGenericInstances:
    def test_quaternary_on_taylor_style_forms(self):
        # degree pattern (1, 2, 3) as produced by contact cones
        q = 13
        X = random_hypersurface(2, 4, q, seed=71)
        from contactcones.contact import taylor_forms
        from contactcones.sampler import sample_point_on_X
        s = sample_point_on_X(X, seed=4)
        forms = taylor_forms(X, s.point)[1:4]
        got = quaternary_triple_solutions(*forms)
        assert sorted(got) == sorted(exhaustive_projective_solutions(list(forms)))
