"""Closed-form integer invariants: measure-of-irrationality bounds,
Fano thresholds, the exceptional-n classification, and the dimension
counts for the incidence parameter spaces.

Everything here is exact integer arithmetic; square roots go through
math.isqrt, so the floor expressions are evaluated without ever touching
a float.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isqrt
from typing import Optional


class HypothesisViolation(ValueError):
    """Inputs leave the range where the statement is proved.

    Callers can pass permissive=True to evaluate the formula anyway; the
    violation is then recorded in the surrounding report instead of raised.
    """


def _require(cond: bool, message: str, permissive: bool,
             notes: Optional[list[str]] = None) -> None:
    if cond:
        return
    if not permissive:
        raise HypothesisViolation(message)
    if notes is not None:
        notes.append(message)


def _sqrt_floor(m: int, shift: int) -> int:
    # floor((sqrt(m) + shift)/2) == floor((isqrt(m) + shift)/2): sqrt(m) is an
    # integer or irrational, so adding an integer and halving cannot cross a
    # lattice point that the truncated root misses
    return (isqrt(m) + shift) // 2


def expected_cone_dim(n: int, h: int) -> int:
    """Projective dimension of the order-h contact cone at a general point."""
    if not 2 <= h <= n + 1:
        raise ValueError(f"h must lie in 2..{n + 1} for n = {n}, got {h}")
    return n + 2 - h


def irr_bounds(n: int, d: int, k: int,
               permissive: bool = False) -> tuple[int, Optional[int]]:
    """Lower bound d-1-n+k for the k-th irrationality degree, exact for k >= n-2."""
    notes: list[str] = []
    _require(n >= 3, f"irrationality bounds need n >= 3, got n = {n}", permissive, notes)
    _require(d >= 2 * n + 2, f"degree range needs d >= 2n+2 = {2 * n + 2}, got d = {d}",
             permissive, notes)
    _require(1 <= k <= n, f"k must lie in 1..{n}, got {k}", permissive, notes)
    lower = d - 1 - n + k
    exact = lower if k >= n - 2 else None
    return lower, exact


def covgon_bounds(n: int, d: int, permissive: bool = False) -> tuple[int, int]:
    """Two-sided bounds on the covering gonality (the k = 1 degree)."""
    notes: list[str] = []
    _require(n >= 2, f"covering gonality bounds need n >= 2, got n = {n}",
             permissive, notes)
    _require(d >= 2 * n + 2, f"degree range needs d >= 2n+2 = {2 * n + 2}, got d = {d}",
             permissive, notes)
    return d - _sqrt_floor(16 * n + 9, -1), d - _sqrt_floor(16 * n + 1, -1)


def conngon_bounds(n: int, d: int,
                   permissive: bool = False) -> tuple[int, int, Optional[int]]:
    """Two-sided bounds on the connecting gonality, with the exact value when pinched."""
    notes: list[str] = []
    _require(n >= 4, f"connecting gonality bounds need n >= 4, got n = {n}",
             permissive, notes)
    _require(d >= 2 * n + 2, f"degree range needs d >= 2n+2 = {2 * n + 2}, got d = {d}",
             permissive, notes)
    lower = d - _sqrt_floor(16 * n + 25, -3)
    upper = d - _sqrt_floor(8 * n + 1, +1)
    return lower, upper, (lower if lower == upper else None)


def fano_max_h(n: int) -> int:
    """Largest h whose general contact-cone section is Fano.

    Evaluated through the closed floor expression and independently as the
    largest h with h(h-1)/2 <= n; the two must agree.
    """
    if n < 2:
        raise ValueError(f"threshold needs n >= 2, got {n}")
    closed = _sqrt_floor(8 * n + 1, +1)
    h = 2
    while (h + 1) * h // 2 <= n:
        h += 1
    if closed != h:
        raise AssertionError(f"floor form {closed} disagrees with search form {h}")
    return closed


def lambda_canonical_twist(n: int, h: int) -> int:
    """Canonical-bundle twist h(h-1)/2 - 1 - n of a general cone section.

    Negative means Fano, zero the Calabi-Yau boundary, positive general type.
    """
    if h < 3:
        raise ValueError(f"twist is defined for h >= 3, got {h}")
    return h * (h - 1) // 2 - 1 - n


def exceptional_n(n: int) -> bool:
    """Whether n lies in one of the six quadratic families where the
    connecting-gonality lower bound meets the covering-gonality upper bound.

    Equivalent to the floor coincidence
    (isqrt(16n+1)-1)//2 == (isqrt(16n+25)-3)//2, which the tests verify.
    """
    if n < 4:
        raise ValueError(f"classification starts at n = 4, got {n}")
    a = 0
    while 4 * a * a + 3 * a <= n:
        base = 4 * a * a
        if n in (base + 3 * a, base + 5 * a, base + 5 * a + 1,
                 base + 7 * a + 2, base + 9 * a + 4, base + 11 * a + 6):
            return True
        a += 1
    return False


@dataclass(frozen=True)
class ModuliDims:
    """Dimension counts for the tangency incidence spaces at (n, d, h)."""

    n: int
    d: int
    h: int
    dim_L: int
    dim_V: int
    dim_Z_tangency: int
    dim_J: int
    fiber_f: int
    dim_W: int
    dim_Box: int
    dim_BoxF: int
    N: int


def moduli_dimensions(n: int, d: int, h: int) -> ModuliDims:
    """Exact binomial evaluation of every parameter-space dimension.

    The fiber count C(n+d+1, d) - C(n+h, h-1) is recomputed as the plain
    sum of C(n+j, j) over j = h..d before anything is returned, so a
    binomial-identity slip cannot ship a wrong table.
    """
    if not 2 <= h <= min(n + 1, d):
        raise ValueError(f"h must lie in 2..{min(n + 1, d)}, got {h}")
    N = comb(d + n + 1, d) - 1
    fiber = comb(n + d + 1, d) - comb(n + h, h - 1)
    if fiber != sum(comb(n + j, j) for j in range(h, d + 1)):
        raise AssertionError("fiber dimension identity failed")
    dims = ModuliDims(
        n=n, d=d, h=h,
        dim_L=comb(d + n + 1, n + 1) - 1,
        dim_V=2 * n + comb(d + n, n) - comb(n + 2, 2),
        dim_Z_tangency=2 * n + comb(d + n + 1, n + 1) - comb(n + 2, 2),
        dim_J=comb(n + 1 + d, d) + n,
        fiber_f=fiber,
        dim_W=comb(n + h, h - 1) + n,
        dim_Box=3 * n + 3 + N - 2 * h,
        dim_BoxF=3 * n + 2 - 2 * h,
        N=N,
    )
    assert dims.dim_W == dims.dim_J - dims.fiber_f
    assert dims.dim_BoxF == dims.dim_Box - (dims.N + 1)
    return dims


def family_dim_lower_bounds(n: int, k: int, connecting: bool) -> int:
    """Minimal dimension of a covering (n-k) or connecting (2n-2k) family."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    return 2 * (n - k) if connecting else n - k


@dataclass(frozen=True)
class TableRow:
    n: int
    status: str          # "exact" or "interval"
    lower: str           # symbolic, e.g. "d-3"
    upper: str
    origin: str


_SMALL_ROWS = {
    1: ("exact", 1, "projection from a point of the curve"),
    2: ("exact", 2, "tangent-line sections of the surface"),
    3: ("exact", 2, "connecting-family dimension forces the cone bound"),
}


def conngon_table(n_min: int, n_max: int) -> list[TableRow]:
    """Connecting-gonality offsets below the degree, symbolic in d.

    Small n carry their classical values; from n = 4 on the two floor
    bounds are evaluated and rows where they disagree come out as
    intervals (n = 9, 13, 14 below 17).
    """
    if n_min > n_max or n_min < 1:
        raise ValueError("need 1 <= n_min <= n_max")
    rows: list[TableRow] = []
    for n in range(n_min, n_max + 1):
        if n in _SMALL_ROWS:
            status, off, origin = _SMALL_ROWS[n]
            rows.append(TableRow(n, status, f"d-{off}", f"d-{off}", origin))
            continue
        lo = _sqrt_floor(16 * n + 25, -3)
        hi = _sqrt_floor(8 * n + 1, +1)
        if lo == hi:
            rows.append(TableRow(n, "exact", f"d-{lo}", f"d-{hi}",
                                 "matching floor bounds"))
        else:
            rows.append(TableRow(n, "interval", f"d-{lo}", f"d-{hi}",
                                 "bounds differ by one"))
    return rows


@dataclass(frozen=True)
class BoundReport:
    """Every closed-form bound at a single (n, d), with hypothesis notes."""

    n: int
    d: int
    covgon_lower: int
    covgon_upper: int
    conngon_lower: Optional[int]
    conngon_upper: Optional[int]
    conngon_exact: Optional[int]
    irr_lower: tuple[int, ...]          # index k-1 holds the k-th bound
    irr_top: dict[int, int]             # exact values for k >= n-2
    fano_h: int
    notes: tuple[str, ...] = field(default=())


def bound_report(n: int, d: int, permissive: bool = False) -> BoundReport:
    """Assemble all bounds at (n, d) and check the chain inequalities."""
    notes: list[str] = []
    _require(n >= 3, f"the bound chain needs n >= 3, got n = {n}", permissive, notes)
    _require(d >= 2 * n + 2, f"degree range needs d >= 2n+2 = {2 * n + 2}, got d = {d}",
             permissive, notes)
    cov = covgon_bounds(n, d, permissive=True)
    if n >= 4:
        con = conngon_bounds(n, d, permissive=True)
    else:
        con = (None, None, None)
        notes.append(f"connecting gonality bounds undefined for n = {n}")
    irr = tuple(irr_bounds(n, d, k, permissive=True)[0] for k in range(1, n + 1))
    top = {k: irr_bounds(n, d, k, permissive=True)[0]
           for k in range(max(1, n - 2), n + 1)}
    report = BoundReport(
        n=n, d=d,
        covgon_lower=cov[0], covgon_upper=cov[1],
        conngon_lower=con[0], conngon_upper=con[1], conngon_exact=con[2],
        irr_lower=irr, irr_top=top, fano_h=fano_max_h(n),
        notes=tuple(notes),
    )
    if not notes:
        assert report.covgon_lower <= report.covgon_upper
        assert all(irr[i] < irr[i + 1] for i in range(len(irr) - 1))
        if report.conngon_lower is not None:
            assert report.covgon_lower <= report.conngon_lower <= irr[-1]
            assert report.conngon_lower <= report.conngon_upper
    return report
