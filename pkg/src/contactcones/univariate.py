"""Dense univariate polynomial arithmetic over F_q.

Polynomials are plain lists of coefficients, index = degree, with no
trailing zeros (the zero polynomial is the empty list).  Everything
here is exact modular arithmetic; q must be prime.
"""

from __future__ import annotations

import random
from typing import Sequence

Poly = list[int]


def trim(cs: Sequence[int]) -> Poly:
    out = list(cs)
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(f: Sequence[int]) -> int:
    return len(f) - 1


def is_zero(f: Sequence[int]) -> bool:
    return not f


def add(f: Sequence[int], g: Sequence[int], q: int) -> Poly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % q
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % q
    return trim(out)


def sub(f: Sequence[int], g: Sequence[int], q: int) -> Poly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % q
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % q
    return trim(out)


def scale(f: Sequence[int], c: int, q: int) -> Poly:
    c %= q
    return trim([v * c % q for v in f])


def mul(f: Sequence[int], g: Sequence[int], q: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim([v % q for v in out])


def monic(f: Sequence[int], q: int) -> Poly:
    f = trim(f)
    if not f:
        return []
    inv = pow(f[-1], q - 2, q)
    return [c * inv % q for c in f]


def divmod_poly(f: Sequence[int], g: Sequence[int], q: int) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = [c % q for c in trim(f)]
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], trim(r)
    quot = [0] * (len(r) - dg)
    inv_lead = pow(g[-1], q - 2, q)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if not c:
            continue
        factor = c * inv_lead % q
        quot[k - dg] = factor
        for j in range(dg + 1):
            r[k - dg + j] = (r[k - dg + j] - factor * g[j]) % q
    return trim(quot), trim(r)


def rem(f: Sequence[int], g: Sequence[int], q: int) -> Poly:
    return divmod_poly(f, g, q)[1]


def gcd(f: Sequence[int], g: Sequence[int], q: int) -> Poly:
    """Monic greatest common divisor."""
    a, b = trim(f), trim(g)
    while b:
        a, b = b, rem(a, b, q)
    return monic(a, q)


def evaluate(f: Sequence[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def derivative(f: Sequence[int], q: int) -> Poly:
    return trim([i * c % q for i, c in enumerate(f)][1:])


def powmod(base: Sequence[int], e: int, modpoly: Sequence[int], q: int) -> Poly:
    """base^e modulo modpoly, by square and multiply."""
    result: Poly = [1]
    b = rem(base, modpoly, q)
    while e:
        if e & 1:
            result = rem(mul(result, b, q), modpoly, q)
        b = rem(mul(b, b, q), modpoly, q)
        e >>= 1
    return result


def roots(f: Sequence[int], q: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of f in F_q, sorted ascending.

    Splits the product of linear factors with random shifts; the output
    is deterministic regardless of the rng because roots are sorted.
    """
    f = trim(f)
    if not f:
        raise ValueError("zero polynomial has every root")
    if len(f) == 1:
        return []
    if rng is None:
        rng = random.Random(0x5EED)
    f = monic(f, q)
    # x^q - x catches exactly the F_q-rational part, one linear factor each
    xq = powmod([0, 1], q, f, q)
    linear_part = gcd(sub(xq, [0, 1], q), f, q)
    found: list[int] = []

    def split(g: Poly) -> None:
        dg = len(g) - 1
        if dg == 0:
            return
        if dg == 1:
            found.append((-g[0]) % q)
            return
        if dg == 2:
            # quadratic formula, q odd in every campaign we run
            b, c = g[1], g[0]
            disc = (b * b - 4 * c) % q
            s = sqrt_mod(disc, q)
            if s is None:
                raise ArithmeticError("product of linear factors has no square root")
            inv2 = pow(2, q - 2, q)
            found.append((-b + s) * inv2 % q)
            found.append((-b - s) * inv2 % q)
            return
        while True:
            a = rng.randrange(q)
            # (x+a)^((q-1)/2) - 1 vanishes on half the shifted residues
            h = powmod([a, 1], (q - 1) // 2, g, q)
            h = sub(h, [1], q)
            g1 = gcd(h, g, q)
            if 0 < len(g1) - 1 < dg:
                split(g1)
                split(divmod_poly(g, g1, q)[0])
                return

    split(linear_part)
    out = sorted(set(found))
    assert len(out) == len(found), "linear part produced a repeated root"
    return out


def sqrt_mod(a: int, q: int) -> int | None:
    """Square root in F_q (q odd prime) or None; Tonelli-Shanks."""
    a %= q
    if a == 0:
        return 0
    if q == 2:
        return a
    if pow(a, (q - 1) // 2, q) != 1:
        return None
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    # write q-1 = s * 2^e with s odd
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    n = 2
    while pow(n, (q - 1) // 2, q) != q - 1:
        n += 1
    x = pow(a, (s + 1) // 2, q)
    b = pow(a, s, q)
    g = pow(n, s, q)
    r = e
    while True:
        t, m = b, 0
        while t != 1:
            t = t * t % q
            m += 1
        if m == 0:
            return x
        gs = pow(g, 1 << (r - m - 1), q)
        x = x * gs % q
        g = gs * gs % q
        b = b * g % q
        r = m


def resultant(f: Sequence[int], g: Sequence[int], q: int) -> int:
    """Scalar resultant via the Euclidean recurrence."""
    a, b = trim(f), trim(g)
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, q) % q
        r = rem(a, b, q)
        if not r:
            return 0
        dr = len(r) - 1
        res = res * pow(b[-1], da - dr, q) % q
        if (da * db) % 2 == 1:
            res = (-res) % q
        a, b = b, r


def lagrange_interpolate(xs: Sequence[int], ys: Sequence[int], q: int) -> Poly:
    """Unique polynomial of degree < len(xs) through the given nodes."""
    if len(xs) != len(ys):
        raise ValueError("node/value length mismatch")
    n = len(xs)
    # full product prod (x - x_i), then peel one factor per node
    full: Poly = [1]
    for x in xs:
        full = mul(full, [(-x) % q, 1], q)
    out = [0] * n
    for x, y in zip(xs, ys):
        if y == 0:
            continue
        quo, r = divmod_poly(full, [(-x) % q, 1], q)
        assert not r
        denom = evaluate(quo, x, q)
        c = y * pow(denom, q - 2, q) % q
        for i, v in enumerate(quo):
            out[i] = (out[i] + c * v) % q
    return trim(out)
