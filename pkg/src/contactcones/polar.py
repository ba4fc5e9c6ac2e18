"""Polar hypersurfaces, tangency loci, and connecting vertices.

The s-th polar of F with respect to q is the plain iterate (q0*d/dx0 +
... + q_{n+1}*d/dx_{n+1})^s F, without the 1/s! some authors divide in.
Reciprocity then reads Pol^s_q(F)(p) = s! * c_s, where c_s is the t^s
coefficient of F(p + t*q), so over characteristic > d the two conventions
cut out the same loci.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import solvers
from .contact import Hypersurface, PointLike, _coords, line_contact_order
from .grobner import Ideal, SlicedDimension, projective_dimension_sliced
from .linalg import rank_mod
from .polyring import Polynomial, ProjPoint, proportional


class _NotFoundType:
    """Marker for a witness search that exhausted its budget over F_q.

    Falsy and a singleton, so `if witness:` reads naturally.  Failure to
    locate a rational point is a finite-field artifact, never a refutation
    of the underlying nonemptiness statement.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NOT_FOUND_OVER_Fq"


NOT_FOUND_OVER_Fq = _NotFoundType()


def polar_poly(X: Hypersurface, q: PointLike, s: int) -> Polynomial:
    """The s-th polar of X with respect to q, degree d-s or zero.

    s = 0 returns F itself; s = d collapses to the constant d!*F(q).
    """
    if not 0 <= s <= X.d:
        raise ValueError(f"polar order must lie in 0..{X.d}, got {s}")
    w = _coords(q, X.nvars, X.field)
    f = X.F
    for _ in range(s):
        f = f.directional_derivative(w)
    return f


@dataclass(frozen=True)
class PolarSystem:
    """All polars of order < h with respect to a fixed pole q."""

    base: Hypersurface
    q: ProjPoint
    h: int
    polars: tuple[Polynomial, ...]

    def intersection_ideal(self) -> Ideal:
        return Ideal(list(self.polars), nvars=self.base.nvars, fld=self.base.field)


def polar_system(X: Hypersurface, q: PointLike, h: int) -> PolarSystem:
    if not 2 <= h <= X.d:
        raise ValueError(f"h must lie in 2..{X.d}, got {h}")
    pole = q if isinstance(q, ProjPoint) else ProjPoint(X.field, list(q))
    w = _coords(pole, X.nvars, X.field)
    polars = [X.F]
    for _ in range(h - 1):
        polars.append(polars[-1].directional_derivative(w))
    return PolarSystem(base=X, q=pole, h=h, polars=tuple(polars))


def polar_intersection_ideal(X: Hypersurface, q: PointLike, h: int) -> Ideal:
    """Ideal of the simultaneous tangency locus: h generators of degrees d..d-h+1."""
    return polar_system(X, q, h).intersection_ideal()


def check_reciprocity(X: Hypersurface, p: PointLike, q: PointLike, h: int) -> bool:
    """Whether p lies in the order-h polar locus of q.

    By reciprocity this holds exactly when the line through p and q meets X
    at p with contact order >= h, which is the property callers should
    cross-check independently via line_contact_order.
    """
    fld = X.field
    pc = _coords(p, X.nvars, fld)
    qc = _coords(q, X.nvars, fld)
    if not X.contains(pc):
        raise ValueError("reciprocity base point must lie on X")
    if proportional(pc, qc, fld):
        raise ValueError("pole and base point must be distinct")
    if not 2 <= h <= X.d:
        raise ValueError(f"h must lie in 2..{X.d}, got {h}")
    system = polar_system(X, qc, h)
    return all(g.evaluate(pc) == 0 for g in system.polars)


def connecting_vertex_ideal(X: Hypersurface, q: PointLike, q2: PointLike,
                            h: int) -> Ideal:
    """Ideal of vertices p whose order-h cone passes through both q and q2.

    Both polar systems share Pol^0 = F, leaving 2h-1 distinct generators.
    The expected projective dimension is at least n+2-2h, which keeps the
    locus nonempty over the algebraic closure for h <= n/2 + 1.
    """
    fld = X.field
    qc = _coords(q, X.nvars, fld)
    qc2 = _coords(q2, X.nvars, fld)
    if proportional(qc, qc2, fld):
        raise ValueError("connecting vertices need two distinct points")
    if not (X.contains(qc) and X.contains(qc2)):
        raise ValueError("both points must lie on X")
    if not 2 <= h <= X.n // 2 + 1:
        raise ValueError(f"h must lie in 2..{X.n // 2 + 1} for n = {X.n}, got {h}")
    first = polar_system(X, qc, h).polars
    second = polar_system(X, qc2, h).polars
    return Ideal(list(first) + list(second[1:]), nvars=X.nvars, fld=fld)


def connecting_dimension(X: Hypersurface, q: PointLike, q2: PointLike, h: int,
                         seed: int = 0) -> SlicedDimension:
    """Dimension evidence for the connecting-vertex locus.

    The generator count alone forces dimension >= n+2-2h; random hyperplane
    slicing upgrades that to an exact value when the emptiness certificate
    fits the column budget.
    """
    ideal = connecting_vertex_ideal(X, q, q2, h)
    return projective_dimension_sliced(list(ideal.generators), seed=seed)


def _witness_ok(X: Hypersurface, p: tuple[int, ...], qc: tuple[int, ...],
                qc2: tuple[int, ...], h: int) -> bool:
    fld = X.field
    if proportional(p, qc, fld) or proportional(p, qc2, fld):
        return False
    if not (X.contains(p) and X.is_smooth_at(p)):
        return False
    return check_reciprocity(X, p, qc, h) and check_reciprocity(X, p, qc2, h)


def find_connecting_vertex(X: Hypersurface, q: PointLike, q2: PointLike, h: int,
                           seed: int = 0, slice_retries: int = 16,
                           exhaustive_cap: int = 600_000):
    """Search for a rational vertex connecting q and q2 at contact order h.

    Tiny ambient spaces are scanned outright.  For h = 2 the three defining
    forms are restricted to seeded-random P^3 slices, whose rational points
    come out of the batched pencil solver; the sliced system is generically
    zero-dimensional, carrying roughly one rational point per slice, so a
    16-slice budget almost always produces a witness when one exists.
    Returns a ProjPoint that passed reciprocity toward both targets, smooth
    on X and distinct from them, or NOT_FOUND_OVER_Fq once the budget runs
    out.  The marker is a search outcome, not a nonexistence proof.
    """
    fld = X.field
    modulus = fld.modulus
    qc = _coords(q, X.nvars, fld)
    qc2 = _coords(q2, X.nvars, fld)
    gens = list(connecting_vertex_ideal(X, qc, qc2, h).generators)

    if solvers.projective_point_count(X.nvars, modulus) <= exhaustive_cap:
        try:
            points = solvers.vectorized_projective_solutions(gens, cap=exhaustive_cap)
        except ValueError:
            points = solvers.exhaustive_projective_solutions(gens, cap=exhaustive_cap)
        for p in points:
            if _witness_ok(X, p, qc, qc2, h):
                return ProjPoint(fld, list(p))
        return NOT_FOUND_OVER_Fq

    if h != 2:
        return NOT_FOUND_OVER_Fq

    rng = random.Random(seed)
    for _ in range(slice_retries):
        while True:
            M = [[rng.randrange(modulus) for _ in range(4)] for _ in range(X.nvars)]
            if rank_mod(M, modulus) == 4:
                break
        sliced = [g.compose_linear(M) for g in gens]
        if any(s.is_zero() for s in sliced):
            continue
        try:
            hits = solvers.quaternary_triple_solutions(*sliced)
        except solvers.DegenerateSystem:
            continue
        except ValueError:
            # field below the interpolation threshold and above the scan cap
            return NOT_FOUND_OVER_Fq
        witnesses = []
        for u in hits:
            p = tuple(sum(M[i][j] * u[j] for j in range(4)) % modulus
                      for i in range(X.nvars))
            if any(p) and _witness_ok(X, p, qc, qc2, h):
                witnesses.append(solvers._normalize_proj(p, modulus))
        if witnesses:
            return ProjPoint(fld, list(min(witnesses)))
    return NOT_FOUND_OVER_Fq
