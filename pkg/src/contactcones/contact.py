"""Contact of lines with a hypersurface: Taylor forms, cones, normalized charts.

Everything here is driven by one identity.  Writing F(p + t*v) = sum c_k t^k,
the form G_k obtained by scaling the degree-k homogeneous component of the
recentered polynomial F(p + x) by k! satisfies G_k(v) = k! * c_k.  The cone of
lines with contact order >= h at p is therefore cut out by G_1, ..., G_{h-1},
and the tangent hyperplane is the single form G_1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence, Union

from .grobner import GREVLEX, Ideal, normal_form
from .polyring import Field, Polynomial, ProjPoint, restrict_to_line

# distinguished contact order of a line lying inside the hypersurface
INFINITE = math.inf

PointLike = Union[ProjPoint, Sequence]


class SingularPointError(ValueError):
    """The requested construction needs a smooth point, but the gradient vanishes."""


def _coords(p: PointLike, nvars: int, fld: Field) -> tuple:
    if isinstance(p, ProjPoint):
        coords = p.coords
    else:
        coords = tuple(fld.normalize(v) for v in p)
    if len(coords) != nvars:
        raise ValueError(f"point has {len(coords)} coordinates, ring has {nvars}")
    if all(v == 0 for v in coords):
        raise ValueError("projective point needs a nonzero coordinate")
    return coords


class Hypersurface:
    """V(F) in P^(n+1) for a homogeneous F of degree d >= 2.

    The field characteristic must exceed d so that the factorials in the
    Taylor forms are units; the rational field is accepted as well.
    """

    __slots__ = ("F", "n", "d", "_gradient")

    def __init__(self, F: Polynomial):
        if F.is_zero():
            raise ValueError("hypersurface needs a nonzero polynomial")
        if not F.is_homogeneous():
            raise ValueError("hypersurface polynomial must be homogeneous")
        if F.nvars < 3:
            raise ValueError("ambient space must be at least P^2")
        d = F.degree()
        if d < 2:
            raise ValueError("degree must be at least 2")
        if F.field.modulus and F.field.modulus <= d:
            raise ValueError(
                f"characteristic {F.field.modulus} must exceed the degree {d}"
            )
        self.F = F
        self.n = F.nvars - 2
        self.d = d
        self._gradient: tuple[Polynomial, ...] | None = None

    @property
    def nvars(self) -> int:
        return self.F.nvars

    @property
    def field(self) -> Field:
        return self.F.field

    def gradient(self) -> tuple[Polynomial, ...]:
        if self._gradient is None:
            self._gradient = tuple(
                self.F.partial_derivative(i) for i in range(self.nvars)
            )
        return self._gradient

    def gradient_at(self, p: PointLike) -> tuple:
        coords = _coords(p, self.nvars, self.field)
        return tuple(g.evaluate(coords) for g in self.gradient())

    def contains(self, p: PointLike) -> bool:
        return self.F.evaluate(_coords(p, self.nvars, self.field)) == 0

    def is_smooth_at(self, p: PointLike) -> bool:
        coords = _coords(p, self.nvars, self.field)
        if self.F.evaluate(coords) != 0:
            return False
        return any(v != 0 for v in self.gradient_at(coords))

    def __repr__(self) -> str:
        return f"Hypersurface(n={self.n}, d={self.d}, q={self.field.modulus})"


def taylor_forms(X: Hypersurface, p: PointLike) -> tuple[Polynomial, ...]:
    """All forms G_0, ..., G_d of F at p from a single recentering.

    G_k is k! times the degree-k homogeneous component of F(p + x); the
    factorial scaling makes G_k(v) equal to the k-th derivative of
    t -> F(p + t*v) at t = 0.
    """
    coords = _coords(p, X.nvars, X.field)
    shifted = X.F.shift(coords)
    out = []
    fact = 1
    for k in range(X.d + 1):
        if k:
            fact *= k
        out.append(shifted.homogeneous_component(k).scale(fact))
    return tuple(out)


def taylor_form(X: Hypersurface, p: PointLike, k: int) -> Polynomial:
    """The single form G_k; see taylor_forms for the convention."""
    if not 0 <= k <= X.d:
        raise ValueError(f"k={k} out of range 0..{X.d}")
    return taylor_forms(X, p)[k]


def tangent_hyperplane(X: Hypersurface, p: PointLike) -> Polynomial:
    """G_1 = sum_i dF/dx_i(p) * x_i, the projective tangent hyperplane at p."""
    coords = _coords(p, X.nvars, X.field)
    if X.F.evaluate(coords) != 0:
        raise ValueError("point does not lie on the hypersurface")
    grad = X.gradient_at(coords)
    if all(v == 0 for v in grad):
        raise SingularPointError("zero gradient: the sampled point is singular")
    fld = X.field
    terms = {
        tuple(1 if j == i else 0 for j in range(X.nvars)): v
        for i, v in enumerate(grad)
        if v
    }
    return Polynomial(fld, X.nvars, terms)


@dataclass(frozen=True)
class ConeIdeal:
    """Generators G_1, ..., G_{h-1} of the locus of directions with contact >= h."""

    vertex: ProjPoint
    h: int
    generators: tuple[Polynomial, ...]

    def to_ideal(self) -> Ideal:
        g = self.generators[0]
        return Ideal(self.generators, g.nvars, g.field)


def cone_ideal(X: Hypersurface, p: PointLike, h: int) -> ConeIdeal:
    """Ideal of V^h_p, the cone of lines with contact order >= h with X at p."""
    coords = _coords(p, X.nvars, X.field)
    if X.F.evaluate(coords) != 0:
        raise ValueError("cone vertex must lie on the hypersurface")
    if not 2 <= h <= X.d:
        raise ValueError(f"contact order h={h} out of range 2..{X.d}")
    forms = taylor_forms(X, coords)
    return ConeIdeal(
        vertex=ProjPoint(X.field, coords),
        h=h,
        generators=tuple(forms[1:h]),
    )


def line_contact_order(X: Hypersurface, p: PointLike, v: PointLike):
    """Vanishing order at t=0 of F(p + t*v); INFINITE when the line lies in X."""
    coords = _coords(p, X.nvars, X.field)
    direction = _coords(v, X.nvars, X.field)
    cs = restrict_to_line(X.F, coords, direction)
    for k, c in enumerate(cs):
        if c != 0:
            return k
    return INFINITE


@dataclass(frozen=True)
class NormalizedChart:
    """Coordinates with p at [1:0:...:0] and the tangent hyperplane at x_{n+1}=0.

    F_norm = c * x_{n+1} * x0^(d-1) + sum_{i=2}^{d} F_i * x0^(d-i) with c != 0;
    the parts F_i are homogeneous of degree i in x_1, ..., x_{n+1} (stored in
    the full ring with no x0), and transform is the column matrix sending the
    new frame to the old one.
    """

    F_norm: Polynomial
    transform: tuple[tuple, ...]
    c: object
    F_parts: tuple[Polynomial, ...]

    @property
    def d(self) -> int:
        return self.F_norm.degree()

    @property
    def n(self) -> int:
        return self.F_norm.nvars - 2

    def part(self, i: int) -> Polynomial:
        """F_i for 2 <= i <= d."""
        if not 2 <= i <= self.d:
            raise ValueError(f"part index {i} out of range 2..{self.d}")
        return self.F_parts[i - 2]


def _incremental_rank_add(rows: list[tuple[int, list]], vec: list, fld) -> bool:
    """Reduce vec against the pivoted rows; add it and return True if independent."""
    v = list(vec)
    for pivot, row in rows:
        if v[pivot] != 0:
            factor = v[pivot]
            v = [fld.sub(a, fld.mul(factor, b)) for a, b in zip(v, row)]
    for i, a in enumerate(v):
        if a != 0:
            inv = fld.inv(a)
            rows.append((i, [fld.mul(inv, b) for b in v]))
            return True
    return False


def normalize_chart(X: Hypersurface, p: PointLike) -> NormalizedChart:
    """Deterministic change of coordinates bringing F to the normalized shape.

    The transform's columns are: p itself, then a greedy completion of p to a
    basis of the tangent hyperplane using the vectors e_i - (g_i/g_j*) e_j*
    in index order (g = grad F(p), j* the first index with g_j* != 0), and
    finally e_j* as the transverse direction.  The pivot rule makes c and the
    parts F_i reproducible.
    """
    fld = X.field
    nvars = X.nvars
    coords = _coords(p, nvars, fld)
    if X.F.evaluate(coords) != 0:
        raise ValueError("chart base point must lie on the hypersurface")
    grad = X.gradient_at(coords)
    if all(v == 0 for v in grad):
        raise SingularPointError("zero gradient: cannot normalize at a singular point")
    jstar = next(i for i, v in enumerate(grad) if v != 0)
    inv_g = fld.inv(grad[jstar])

    columns: list[list] = [list(coords)]
    pivots: list[tuple[int, list]] = []
    _incremental_rank_add(pivots, list(coords), fld)
    for i in range(nvars):
        if i == jstar or len(columns) == nvars - 1:
            continue
        vec = [fld.normalize(0)] * nvars
        vec[i] = fld.normalize(1)
        vec[jstar] = fld.sub(vec[jstar], fld.mul(grad[i], inv_g))
        if _incremental_rank_add(pivots, vec, fld):
            columns.append(vec)
    if len(columns) != nvars - 1:
        raise RuntimeError("tangent hyperplane basis completion failed")
    last = [fld.normalize(0)] * nvars
    last[jstar] = fld.normalize(1)
    columns.append(last)

    matrix = tuple(
        tuple(columns[j][i] for j in range(nvars)) for i in range(nvars)
    )
    F_norm = X.F.compose_linear(matrix)
    d = X.d

    def e_with_x0(k: int, j: int | None) -> tuple:
        e = [0] * nvars
        e[0] = k
        if j is not None:
            e[j] += 1
        return tuple(e)

    if F_norm.coefficient(e_with_x0(d, None)) != 0:
        raise RuntimeError("normalized form kept an x0^d term; p not on X?")
    for j in range(1, nvars - 1):
        if F_norm.coefficient(e_with_x0(d - 1, j)) != 0:
            raise RuntimeError("normalized form is not tangent to x_{n+1} = 0")
    c = F_norm.coefficient(e_with_x0(d - 1, nvars - 1))
    if c == 0:
        raise RuntimeError("transverse coefficient vanished; singular point?")

    buckets: dict[int, dict] = {k: {} for k in range(2, d + 1)}
    for e, coeff in F_norm.terms.items():
        k = d - e[0]
        if k <= 1:
            continue
        buckets[k][(0,) + e[1:]] = coeff
    parts = tuple(Polynomial(fld, nvars, buckets[k]) for k in range(2, d + 1))
    return NormalizedChart(F_norm=F_norm, transform=matrix, c=c, F_parts=parts)


def predicted_taylor_form(chart: NormalizedChart, k: int) -> Polynomial:
    """G_k at [1:0:...:0] assembled from the chart data alone.

    Expanding F_norm(e_0 + x) term by term gives, exactly,

        G_k = k (d-1)!/(d-k)! * c * x_{n+1} x0^{k-1}
            + sum_{i=2}^{k} k!/(k-i)! * (d-i)!/(d-k)! * x0^{k-i} F_i,

    with integer coefficients, so the comparison against taylor_form is an
    equality of polynomials over any field of characteristic > d.
    """
    d = chart.d
    if not 1 <= k <= d:
        raise ValueError(f"k={k} out of range 1..{d}")
    fld = chart.F_norm.field
    nvars = chart.F_norm.nvars
    lead_coeff = k * math.factorial(d - 1) // math.factorial(d - k)
    e_lead = [0] * nvars
    e_lead[0] = k - 1
    e_lead[nvars - 1] = 1
    acc = Polynomial.monomial(fld, e_lead, fld.mul(fld.normalize(lead_coeff), chart.c))
    for i in range(2, k + 1):
        ci = (
            math.factorial(k) // math.factorial(k - i)
            * (math.factorial(d - i) // math.factorial(d - k))
        )
        e_x0 = [0] * nvars
        e_x0[0] = k - i
        acc = acc.add(chart.part(i).mul_monomial(tuple(e_x0), ci))
    return acc


def lambda_section(X: Hypersurface, p: PointLike, h: int, seed: int,
                   max_retries: int = 16) -> Ideal:
    """Ideal of the cone V^h_p sliced by a seeded-random hyperplane missing p.

    The result is generated by the h-1 cone forms plus one linear form, so it
    carries two linear generators in ambient coordinates; inside the tangent
    hyperplane it is cut by the h-2 forms of degrees 2, ..., h-1.
    """
    if h < 3:
        raise ValueError("sections need h >= 3; the h=2 cone is the hyperplane itself")
    fld = X.field
    if fld.is_rational:
        raise ValueError("seeded hyperplane sampling needs a prime field")
    cone = cone_ideal(X, p, h)
    coords = cone.vertex.coords
    rng = random.Random(seed)
    for _ in range(max_retries):
        coeffs = [rng.randrange(fld.modulus) for _ in range(X.nvars)]
        L = Polynomial(
            fld,
            X.nvars,
            {
                tuple(1 if j == i else 0 for j in range(X.nvars)): a
                for i, a in enumerate(coeffs)
                if a
            },
        )
        if not L.is_zero() and L.evaluate(coords) != 0:
            return Ideal(list(cone.generators) + [L], X.nvars, fld)
    raise RuntimeError("hyperplane sampling kept hitting the vertex")


def tangent_section_multiplicity(X: Hypersurface, p: PointLike):
    """Multiplicity at p of the tangent-hyperplane section X with T_pX.

    Computed as the least k >= 2 with G_k not in the ideal (G_1); INFINITE
    when every form reduces to zero (the section is a cone over p).
    """
    forms = taylor_forms(X, p)
    if forms[0].coefficient((0,) * X.nvars) != 0:
        raise ValueError("point does not lie on the hypersurface")
    if forms[1].is_zero():
        raise SingularPointError("zero gradient: multiplicity is not 2-regular")
    for k in range(2, X.d + 1):
        if not normal_form(forms[k], [forms[1]], GREVLEX).is_zero():
            return k
    return INFINITE
