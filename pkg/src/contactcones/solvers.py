"""Rational point extraction for small projective systems over F_q.

Three regimes: binary forms reduce to univariate root finding, pairs of
ternary forms go through an interpolated Sylvester resultant plus
back-substitution, and genuinely tiny fields are scanned exhaustively.
Callers are expected to verify returned points against the full system;
these routines only promise completeness, not minimality of work.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

import numpy as np

from . import univariate as uni
from .linalg import batched_det, vandermonde_mod, inverse_mod, matmul_mod, modinv_vec
from .polyring import Field, Polynomial


class DegenerateSystem(ValueError):
    """The system has a positive-dimensional or shared-component locus."""


def binary_form_roots(B: Polynomial) -> list[tuple[int, int]]:
    """Projective roots in P^1 of a nonzero binary form, sorted.

    Points are returned as (x0, x1) with the first nonzero coordinate 1.
    """
    if B.nvars != 2 or B.is_zero():
        raise ValueError("expected a nonzero binary form")
    q = B.field.modulus
    d = B.degree()
    # f(t) = B(t, 1); roots t -> (t : 1), degree drop catches (1 : 0)
    f = [0] * (d + 1)
    for (a, b), c in B.terms.items():
        f[a] = int(c)
    f = uni.trim(f)
    out: list[tuple[int, int]] = []
    if len(f) - 1 < d:
        out.append((1, 0))
    if f:
        out.extend(_normalize_proj((t, 1), q) for t in uni.roots(f, q))
    else:
        raise DegenerateSystem("binary form vanishes identically on the chart")
    return sorted(out)


def _x2_coefficients(g: Polynomial) -> list[Polynomial]:
    """Coefficients of x2^k as binary forms in (x0, x1), k = 0..deg."""
    d = g.degree()
    fld = g.field
    buckets: list[dict] = [{} for _ in range(d + 1)]
    for (a, b, k), c in g.terms.items():
        buckets[k][(a, b)] = c
    return [Polynomial(fld, 2, bucket) for bucket in buckets]


def _eval_binary_grid(forms: Sequence[Polynomial], nodes: np.ndarray, q: int) -> np.ndarray:
    """Values of binary forms at (1, y) for y in nodes; shape (len(forms), len(nodes))."""
    out = np.zeros((len(forms), nodes.shape[0]), dtype=np.int64)
    for i, f in enumerate(forms):
        if f.is_zero():
            continue
        maxb = max(b for (_, b) in f.terms)
        coeffs = np.zeros(maxb + 1, dtype=np.int64)
        for (_, b), c in f.terms.items():
            coeffs[b] = int(c)
        acc = np.zeros_like(nodes)
        for c in coeffs[::-1]:
            acc = (acc * nodes + int(c)) % q
        out[i] = acc
    return out


def resultant_wrt_x2(g: Polynomial, h: Polynomial) -> list[int]:
    """Res_{x2}(g, h) for ternary forms, as coefficients of R(1, y).

    Uses the formal Sylvester matrix of sizes (deg g, deg h) evaluated on
    interpolation nodes, so coefficient degree drops cannot corrupt the
    result.  The resultant form R(x0, x1) has degree deg(g)*deg(h); the
    returned dense list may be shorter when (0:1) is a root.
    """
    if g.nvars != 3 or h.nvars != 3:
        raise ValueError("expected ternary forms")
    q = g.field.modulus
    dg, dh = g.degree(), h.degree()
    D = dg * dh
    if q <= D + 1:
        raise ValueError("field too small for interpolation; use the exhaustive solver")
    gc = _x2_coefficients(g)
    hc = _x2_coefficients(h)
    nodes = np.arange(D + 1, dtype=np.int64)
    gv = _eval_binary_grid(gc, nodes, q)   # (dg+1, D+1)
    hv = _eval_binary_grid(hc, nodes, q)
    n_nodes = D + 1
    size = dg + dh
    mats = np.zeros((n_nodes, size, size), dtype=np.int64)
    # dh rows of g coefficients, then dg rows of h coefficients
    for r in range(dh):
        mats[:, r, r : r + dg + 1] = gv[::-1].T
    for r in range(dg):
        mats[:, dh + r, r : r + dh + 1] = hv[::-1].T
    vals = batched_det(mats, q)
    V = vandermonde_mod(nodes, n_nodes, q)
    coeffs = matmul_mod(inverse_mod(V, q), vals.reshape(-1, 1), q).ravel()
    return uni.trim([int(c) for c in coeffs])


def _specialize_x01(g: Polynomial, x0: int, x1: int) -> list[int]:
    """g(x0, x1, t) as a dense univariate in t."""
    q = g.field.modulus
    out = [0] * (g.degree() + 1)
    for (a, b, k), c in g.terms.items():
        out[k] = (out[k] + int(c) * pow(x0, a, q) * pow(x1, b, q)) % q
    return uni.trim(out)


def ternary_pair_solutions(g: Polynomial, h: Polynomial,
                           _retries: int = 4) -> list[tuple[int, int, int]]:
    """Common projective zeros of two ternary forms with no shared factor.

    A frame where both forms kill x2^deg makes the formal resultant vanish;
    such frames are retried after a random change of coordinates.  When the
    resultant still vanishes identically the intersection really contains a
    curve and DegenerateSystem propagates.
    """
    q = g.field.modulus
    dg, dh = g.degree(), h.degree()
    r = resultant_wrt_x2(g, h)
    if not r:
        if _retries <= 0:
            raise DegenerateSystem("identically zero resultant: shared component")
        rng = random.Random(0xC0FFEE + _retries)
        while True:
            M = [[rng.randrange(q) for _ in range(3)] for _ in range(3)]
            det = (
                M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
            ) % q
            if det:
                break
        sols = ternary_pair_solutions(g.compose_linear(M), h.compose_linear(M),
                                      _retries - 1)
        mapped = (
            tuple(sum(M[i][j] * s[j] for j in range(3)) % q for i in range(3))
            for s in sols
        )
        return sorted(set(_normalize_proj(p, q) for p in mapped))
    D = dg * dh
    # r(y) = R(1, y): finite roots give (1 : t), a degree drop means R(0, 1) = 0
    candidates = [(1, t) for t in (uni.roots(r, q) if len(r) > 1 else [])]
    if len(r) - 1 < D:
        candidates.append((0, 1))
    out: list[tuple[int, int, int]] = []
    for (a, b) in candidates:
        gu = _specialize_x01(g, a, b)
        hu = _specialize_x01(h, a, b)
        if not gu and not hu:
            raise DegenerateSystem(f"whole line (x0:x1)=({a}:{b}) lies in both forms")
        common = uni.gcd(gu, hu, q) if (gu and hu) else (gu or hu)
        if len(common) - 1 >= 1:
            for t in uni.roots(common, q):
                out.append((a, b, t))
        # roots at x2-infinity on this line are the point (0:0:1), handled below
    if g.coefficient((0, 0, dg)) == 0 and h.coefficient((0, 0, dh)) == 0:
        out.append((0, 0, 1))
    return sorted(set(_normalize_proj(p, q) for p in out))


def ternary_system_solutions(polys: Sequence[Polynomial]) -> list[tuple[int, int, int]]:
    """Common zeros of >= 2 ternary forms: pair-solve the two smallest, filter."""
    polys = [p for p in polys if not p.is_zero()]
    if len(polys) < 2:
        raise ValueError("need at least two nonzero forms")
    order = sorted(range(len(polys)), key=lambda i: polys[i].degree())
    g, h = polys[order[0]], polys[order[1]]
    rest = [polys[i] for i in order[2:]]
    sols = ternary_pair_solutions(g, h)
    return [
        s for s in sols
        if all(p.evaluate(s) == 0 for p in rest)
    ]


def _normalize_proj(coords: Sequence[int], q: int) -> tuple[int, ...]:
    vals = [v % q for v in coords]
    pivot = next(v for v in vals if v)
    inv = pow(pivot, q - 2, q)
    return tuple(v * inv % q for v in vals)


def iter_projective_points(nvars: int, q: int) -> Iterable[tuple[int, ...]]:
    """All points of P^{nvars-1}(F_q), first nonzero coordinate = 1."""
    for pivot in range(nvars):
        head = (0,) * pivot + (1,)
        for tail in itertools.product(range(q), repeat=nvars - pivot - 1):
            yield head + tail


def projective_point_count(nvars: int, q: int) -> int:
    return (q**nvars - 1) // (q - 1)


def exhaustive_projective_solutions(polys: Sequence[Polynomial],
                                    cap: int = 2_000_000) -> list[tuple[int, ...]]:
    """Scan every rational point; only sensible over tiny fields."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("no nonzero forms to solve")
    nvars = polys[0].nvars
    q = polys[0].field.modulus
    if projective_point_count(nvars, q) > cap:
        raise ValueError("point count exceeds the exhaustive-scan cap")
    out = []
    for pt in iter_projective_points(nvars, q):
        if all(p.evaluate(pt) == 0 for p in polys):
            out.append(pt)
    return out


def _pencil_coeff_values(F: Polynomial, nodes: np.ndarray, zs: np.ndarray,
                         q: int) -> np.ndarray:
    """y3-coefficient values of F(y0, y1, z*y3, y3) at (y0, y1) = (1, t).

    A monomial y0^a y1^b y2^c y3^k contributes coeff * t^b * z^c to the
    y3^(c+k) coefficient, so one z-polynomial per (c+k, b) bucket covers
    every lane at once: Horner over c, then node powers over b.
    Returns shape (deg+1, len(nodes), len(zs)).
    """
    d = F.degree()
    tab = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)  # [m, b, c]
    for (a, b, c, k), coeff in F.terms.items():
        tab[c + k, b, c] = int(coeff)
    acc = np.zeros((d + 1, d + 1, zs.shape[0]), dtype=np.int64)
    for c in range(d, -1, -1):
        acc = (acc * zs[None, None, :] + tab[:, :, c, None]) % q
    T = vandermonde_mod(nodes, d + 1, q)
    out = np.empty((d + 1, nodes.shape[0], zs.shape[0]), dtype=np.int64)
    for m in range(d + 1):
        out[m] = matmul_mod(T, acc[m], q)
    return out


def _batched_sylvester_values(gv: np.ndarray, hv: np.ndarray, q: int) -> np.ndarray:
    """Formal Sylvester determinants at every (node, lane) pair.

    gv, hv have shape (deg+1, n_nodes, L) holding y3-coefficient values on
    a shared grid.  The formal sizes make specialisation commute with
    taking the resultant, exactly as in resultant_wrt_x2.  Returns
    (n_nodes, L) values of Res_{y3} on the grid.
    """
    dg, dh = gv.shape[0] - 1, hv.shape[0] - 1
    n_nodes, L = gv.shape[1], gv.shape[2]
    N = n_nodes * L
    size = dg + dh
    mats = np.zeros((N, size, size), dtype=np.int64)
    gflat = gv.reshape(dg + 1, N)[::-1].T
    hflat = hv.reshape(dh + 1, N)[::-1].T
    for r in range(dh):
        mats[:, r, r : r + dg + 1] = gflat
    for r in range(dg):
        mats[:, dh + r, r : r + dh + 1] = hflat
    return batched_det(mats, q).reshape(n_nodes, L)


def _batched_coprime_mask(big: np.ndarray, small: np.ndarray,
                          q: int) -> tuple[np.ndarray, np.ndarray]:
    """Lane-parallel Euclid over formal coefficient columns.

    big: (da+1, L) ascending coefficients of formal degree da, small
    likewise with db <= da.  Returns (coprime, fallback).  A lane is
    coprime only when the generic division chain ran to completion with a
    nonzero constant at the end, which certifies gcd = 1 and that neither
    form vanishes at (0:1).  Lanes whose leading coefficient dies at any
    stage deviate from the generic degree sequence and are flagged as
    fallback; their subsequent rows are garbage and never trusted
    (modinv_vec maps 0 to 0, so the arithmetic just carries them along).
    """
    a = big[::-1].copy()
    b = small[::-1].copy()
    fallback = (a[0] == 0) | (b[0] == 0)
    while b.shape[0] > 1:
        da, db = a.shape[0] - 1, b.shape[0] - 1
        inv = modinv_vec(b[0], q)
        for k in range(da - db + 1):
            factor = (a[k] * inv) % q
            a[k : k + db + 1] = (a[k : k + db + 1] - factor[None, :] * b) % q
        a, b = b, a[da - db + 1 :]
        fallback |= b[0] == 0
    coprime = (b[0] != 0) & ~fallback
    return coprime, fallback


def _plane_section_solutions(forms: Sequence[Polynomial], matrix,
                             q: int) -> list[tuple[int, int, int]]:
    """Exact common zeros of the system restricted to a plane, in plane coords."""
    live = [p.compose_linear(matrix) for p in forms]
    live = [p for p in live if not p.is_zero()]
    if not live:
        raise DegenerateSystem("plane lies inside the common zero locus")
    if len(live) >= 2:
        try:
            return ternary_system_solutions(live)
        except DegenerateSystem:
            pass
    return [tuple(p) for p in exhaustive_projective_solutions(live)]


def quaternary_triple_solutions(f: Polynomial, g: Polynomial, h: Polynomial,
                                lane_block: int = 256) -> list[tuple[int, ...]]:
    """Common projective zeros in P^3 of three quaternary forms.

    Sweeps the plane pencil y2 = z*y3 together with the plane y3 = 0.  On
    each pencil lane the restrictions become ternary, and a common zero
    away from (0:0:z:1) forces both Res_{y3}(g, h) and Res_{y3}(f, g) to
    vanish at its (y0 : y1).  Both resultants are evaluated for all lanes
    at once through batched formal Sylvester determinants on a shared node
    grid, interpolated, and run through a lane-parallel Euclid; provably
    coprime lanes are discarded wholesale.  Survivors, degenerate lanes and
    the special plane go through the exact ternary machinery, and the
    pencil axis points (0:0:z:1) are checked directly since the resultant
    argument never sees them.  For random data the expected survivor count
    is O(1) independent of q, so the sweep costs about two batched
    determinant passes.
    """
    for p in (f, g, h):
        if p.nvars != 4 or p.is_zero():
            raise ValueError("expected three nonzero quaternary forms")
    q = f.field.modulus
    d1, d2, d3 = f.degree(), g.degree(), h.degree()
    D1, D2 = d2 * d3, d1 * d2
    n_nodes = max(D1, D2) + 1
    if q <= n_nodes:
        raise ValueError("field too small for interpolation; use the exhaustive solver")
    nodes = np.arange(n_nodes, dtype=np.int64)
    V1inv = inverse_mod(vandermonde_mod(nodes[: D1 + 1], D1 + 1, q), q)
    V2inv = inverse_mod(vandermonde_mod(nodes[: D2 + 1], D2 + 1, q), q)

    sols: set[tuple[int, ...]] = set()

    def absorb(plane_points, matrix) -> None:
        for u in plane_points:
            pt = tuple(
                sum(matrix[i][j] * u[j] for j in range(3)) % q for i in range(4)
            )
            if any(pt) and all(p.evaluate(pt) == 0 for p in (f, g, h)):
                sols.add(_normalize_proj(pt, q))

    survivors: list[int] = []
    for start in range(0, q, lane_block):
        zs = np.arange(start, min(start + lane_block, q), dtype=np.int64)
        fv = _pencil_coeff_values(f, nodes[: D2 + 1], zs, q)
        gv = _pencil_coeff_values(g, nodes, zs, q)
        hv = _pencil_coeff_values(h, nodes[: D1 + 1], zs, q)
        r1 = matmul_mod(V1inv, _batched_sylvester_values(gv[:, : D1 + 1], hv, q), q)
        r2 = matmul_mod(V2inv, _batched_sylvester_values(fv, gv[:, : D2 + 1], q), q)
        if D2 >= D1:
            coprime, _ = _batched_coprime_mask(r2, r1, q)
        else:
            coprime, _ = _batched_coprime_mask(r1, r2, q)
        survivors.extend(int(z) for z, ok in zip(zs, coprime) if not ok)

    for z in survivors:
        M = [[1, 0, 0], [0, 1, 0], [0, 0, z], [0, 0, 1]]
        absorb(_plane_section_solutions((f, g, h), M, q), M)
    M0 = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]
    absorb(_plane_section_solutions((f, g, h), M0, q), M0)

    # eliminated lanes were only cleared away from the axis point (0:0:z:1)
    zline = np.arange(q, dtype=np.int64)
    hit = np.ones(q, dtype=bool)
    for p in (f, g, h):
        cs = [0] * (p.degree() + 1)
        for (a, b, c, k), coeff in p.terms.items():
            if a == 0 and b == 0:
                cs[c] = int(coeff)
        acc = np.zeros(q, dtype=np.int64)
        for c in reversed(cs):
            acc = (acc * zline + c) % q
        hit &= acc == 0
    for z in np.nonzero(hit)[0]:
        sols.add(_normalize_proj((0, 0, int(z), 1), q))
    return sorted(sols)


def _dense_tensor(p: Polynomial) -> np.ndarray:
    T = np.zeros((p.degree() + 1,) * p.nvars, dtype=np.int64)
    for e, c in p.terms.items():
        T[e] = int(c)
    return T


def _chart_values(T: np.ndarray, pivot: int, q: int) -> np.ndarray:
    """Values on the chart x_0 = .. = x_{pivot-1} = 0, x_pivot = 1.

    Remaining variables range over all of F_q; Horner over one coefficient
    axis at a time keeps the whole chart a single tensor of shape (q,)*k
    with axes in variable order.
    """
    S = T[(0,) * pivot].sum(axis=0) % q
    nodes = np.arange(q, dtype=np.int64)
    vals = S
    for _ in range(vals.ndim):
        acc = np.zeros(vals.shape[1:] + (q,), dtype=np.int64)
        for e in range(vals.shape[0] - 1, -1, -1):
            acc = (acc * nodes + vals[e][..., None]) % q
        vals = acc
    return vals


def vectorized_projective_solutions(polys: Sequence[Polynomial],
                                    cap: int = 2_000_000) -> list[tuple[int, ...]]:
    """Exhaustive scan through dense coefficient tensors.

    Same answer as exhaustive_projective_solutions, but each pivot chart is
    evaluated as one Horner sweep per variable, so half a million points
    cost a handful of numpy passes instead of a Python loop per point.
    Dense tensors grow like (d+1)^nvars; systems past that budget must use
    the pointwise scan.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("no nonzero forms to solve")
    nvars = polys[0].nvars
    q = polys[0].field.modulus
    if projective_point_count(nvars, q) > cap:
        raise ValueError("point count exceeds the exhaustive-scan cap")
    if any((p.degree() + 1) ** nvars > 20_000_000 for p in polys):
        raise ValueError("dense coefficient tensor too large for this scan")
    tensors = [_dense_tensor(p) for p in polys]
    out: list[tuple[int, ...]] = []
    for pivot in range(nvars):
        mask = None
        for T in tensors:
            m = _chart_values(T, pivot, q) == 0
            mask = m if mask is None else (mask & m)
            if not mask.any():
                break
        if mask.ndim == 0:
            if bool(mask):
                out.append((0,) * (nvars - 1) + (1,))
        elif mask.any():
            for row in np.argwhere(mask):
                out.append((0,) * pivot + (1,) + tuple(int(v) for v in row))
    return sorted(out)
