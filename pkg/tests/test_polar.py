import math
import random

import pytest

from contactcones.contact import INFINITE, line_contact_order
from contactcones.polar import (
    NOT_FOUND_OVER_Fq,
    check_reciprocity,
    connecting_dimension,
    connecting_vertex_ideal,
    find_connecting_vertex,
    polar_intersection_ideal,
    polar_poly,
    polar_system,
)
from contactcones.polyring import parse_poly, proportional, restrict_to_line
from contactcones.sampler import random_hypersurface, sample_point_on_X
from tests.conftest import make_X

Q = 10007


class TestPolarPoly:
    def test_degrees_descend(self, fermat_cubic):
        pole = (1, 1, 1, 1)
        for s in range(fermat_cubic.d + 1):
            f = polar_poly(fermat_cubic, pole, s)
            assert f.is_zero() or f.degree() == fermat_cubic.d - s

    def test_order_zero_is_F(self, quadric):
        assert polar_poly(quadric, (0, 0, 0, 1), 0) == quadric.F

    def test_top_order_is_constant_factorial_value(self, fermat_cubic):
        # (q . d/dx)^d F = d! F(q) as a constant
        pole = (1, 2, 0, 0)
        f = polar_poly(fermat_cubic, pole, 3)
        expected = math.factorial(3) * fermat_cubic.F.evaluate(pole) % Q
        assert f == f.constant(fermat_cubic.field, 4, expected)

    def test_linearity_in_F(self):
        q = 11
        A = make_X("x0^3 + x1^2*x2", 1, q)
        B = make_X("x2^3 + x0*x1*x2", 1, q)
        pole = (1, 5, 2)
        sA = polar_poly(A, pole, 2)
        sB = polar_poly(B, pole, 2)
        C = make_X("2*x0^3 + 2*x1^2*x2 + 3*x2^3 + 3*x0*x1*x2", 1, q)
        assert polar_poly(C, pole, 2) == sA.scale(2).add(sB.scale(3))

    def test_order_range(self, quadric):
        with pytest.raises(ValueError):
            polar_poly(quadric, (1, 0, 0, 0), 3)
        with pytest.raises(ValueError):
            polar_poly(quadric, (1, 0, 0, 0), -1)


class TestReciprocity:
    def test_polar_values_are_taylor_coefficients(self):
        # Pol^s_q(F)(p) = s! c_s where F(p + t q) = sum c_s t^s
        rng = random.Random(3)
        for _ in range(30):
            n = rng.choice((1, 2))
            d = rng.randrange(2, 6)
            X = random_hypersurface(n, d, Q, seed=rng.randrange(2 ** 30))
            p = tuple(rng.randrange(Q) for _ in range(X.nvars))
            pole = tuple(rng.randrange(Q) for _ in range(X.nvars))
            if (all(c == 0 for c in p) or all(c == 0 for c in pole)
                    or proportional(p, pole, X.field)):
                continue
            cs = restrict_to_line(X.F, p, pole)
            for s in range(d + 1):
                assert polar_poly(X, pole, s).evaluate(p) == \
                    math.factorial(s) * cs[s] % Q

    def test_membership_iff_contact(self):
        rng = random.Random(7)
        checked = 0
        while checked < 20:
            n = rng.choice((1, 2))
            d = rng.randrange(3, 6)
            X = random_hypersurface(n, d, Q, seed=rng.randrange(2 ** 30))
            try:
                s = sample_point_on_X(X, seed=rng.randrange(2 ** 30))
            except RuntimeError:
                continue
            pole = tuple(rng.randrange(Q) for _ in range(X.nvars))
            if all(c == 0 for c in pole) or \
                    proportional(tuple(s.point), pole, X.field):
                continue
            h = rng.randrange(2, d + 1)
            member = check_reciprocity(X, s.point, pole, h)
            order = line_contact_order(X, s.point, pole)
            assert member == (order is INFINITE or order >= h)
            checked += 1

    def test_preconditions(self, quadric):
        with pytest.raises(ValueError, match="lie on X"):
            check_reciprocity(quadric, (1, 1, 1, 0), (0, 0, 0, 1), 2)
        with pytest.raises(ValueError, match="distinct"):
            check_reciprocity(quadric, (1, 0, 0, 0), (2, 0, 0, 0), 2)
        with pytest.raises(ValueError, match="h must lie"):
            check_reciprocity(quadric, (1, 0, 0, 0), (0, 0, 0, 1), 3)


class TestPolarSystem:
    def test_system_shape(self, fermat_cubic):
        system = polar_system(fermat_cubic, (1, 2, 3, 4), 3)
        assert len(system.polars) == 3
        assert [g.degree() for g in system.polars] == [3, 2, 1]
        assert system.polars[0] == fermat_cubic.F

    def test_intersection_ideal_generators(self, fermat_cubic):
        ideal = polar_intersection_ideal(fermat_cubic, (1, 2, 3, 4), 3)
        assert len(ideal.generators) == 3

    def test_h_range(self, fermat_cubic):
        with pytest.raises(ValueError):
            polar_system(fermat_cubic, (1, 0, 0, 0), 1)
        with pytest.raises(ValueError):
            polar_system(fermat_cubic, (1, 0, 0, 0), 4)


class TestConnectingVertexIdeal:
    def _instance(self, n=4, d=10, q=101, seed=19):
        X = random_hypersurface(n, d, q, seed=seed)
        s1 = sample_point_on_X(X, seed=1)
        s2 = sample_point_on_X(X, seed=2)
        return X, tuple(s1.point), tuple(s2.point)

    def test_generator_count(self):
        X, q1, q2 = self._instance()
        for h in (2, 3):
            ideal = connecting_vertex_ideal(X, q1, q2, h)
            # Pol^0 = F is shared between the two fans of polars
            assert len(ideal.generators) == 2 * h - 1

    def test_preconditions(self):
        X, q1, q2 = self._instance()
        with pytest.raises(ValueError, match="distinct"):
            connecting_vertex_ideal(X, q1, q1, 2)
        with pytest.raises(ValueError, match="h must lie"):
            connecting_vertex_ideal(X, q1, q2, 4)
        off = (1, 0, 0, 0, 0, 0)
        if not X.contains(off):
            with pytest.raises(ValueError, match="lie on X"):
                connecting_vertex_ideal(X, q1, off, 2)

    def test_dimension_meets_expected_bound(self):
        X, q1, q2 = self._instance()
        sd = connecting_dimension(X, q1, q2, 2, seed=5)
        assert sd.lower_bound >= X.n + 2 - 4


class TestFindConnectingVertex:
    def test_pencil_branch_finds_witness(self):
        X = random_hypersurface(4, 10, 101, seed=19)
        q1 = tuple(sample_point_on_X(X, seed=1).point)
        q2 = tuple(sample_point_on_X(X, seed=2).point)
        w = find_connecting_vertex(X, q1, q2, 2, seed=0)
        assert w
        wc = tuple(w.coords)
        assert not proportional(wc, q1, X.field)
        assert not proportional(wc, q2, X.field)
        o1 = line_contact_order(X, wc, q1)
        o2 = line_contact_order(X, wc, q2)
        assert (o1 is INFINITE or o1 >= 2) and (o2 is INFINITE or o2 >= 2)

    def test_exhaustive_branch_small_field(self):
        X = random_hypersurface(2, 4, 5, seed=3)
        s1 = sample_point_on_X(X, seed=1)
        s2 = sample_point_on_X(X, seed=2)
        w = find_connecting_vertex(X, s1.point, s2.point, 2)
        if w:
            wc = tuple(w.coords)
            assert line_contact_order(X, wc, tuple(s1.point)) >= 2

    def test_not_found_is_honest_and_falsy(self):
        # frozen fixture: empty rational connecting locus over F_5
        X = random_hypersurface(2, 4, 5, seed=0)
        w = find_connecting_vertex(X, (1, 2, 0, 1), (1, 2, 2, 3), 2)
        assert w is NOT_FOUND_OVER_Fq
        assert not w
        assert repr(w) == "NOT_FOUND_OVER_Fq"

    def test_deterministic(self):
        X = random_hypersurface(4, 10, 101, seed=19)
        q1 = tuple(sample_point_on_X(X, seed=1).point)
        q2 = tuple(sample_point_on_X(X, seed=2).point)
        a = find_connecting_vertex(X, q1, q2, 2, seed=4)
        b = find_connecting_vertex(X, q1, q2, 2, seed=4)
        assert a == b
