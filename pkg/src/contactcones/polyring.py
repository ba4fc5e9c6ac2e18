"""Sparse multivariate polynomials over a prime field.

Polynomials are dictionaries mapping exponent tuples to nonzero
coefficients.  Coefficients live in F_q for a prime q (the default mode
used by every verification campaign) or, as a convenience for small
hand-checked examples, in Q via ``fractions.Fraction``.

The variable set is fixed per polynomial: a polynomial in ``nvars``
variables uses names ``x0 .. x{nvars-1}``.  The text grammar is

    poly   := term (('+' | '-') term)*
    term   := coeff ('*' power)* | power ('*' power)*
    power  := 'x' index ('^' exponent)?

with optional whitespace everywhere and decimal integer coefficients,
reduced modulo q on input.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Exponents = tuple[int, ...]

RATIONAL_MODULUS = 0


def _is_probable_prime(m: int) -> bool:
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    # deterministic Miller-Rabin for 64-bit inputs
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic context for F_q, q an odd-or-even prime below 2^31."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int) or not _is_probable_prime(q):
            raise ValueError(f"modulus must be prime, got {q!r}")
        if q >= 1 << 31:
            raise ValueError("modulus too large for exact integer kernels")
        self.q = q

    @property
    def modulus(self) -> int:
        return self.q

    @property
    def is_rational(self) -> bool:
        return False

    def normalize(self, a) -> int:
        return int(a) % self.q

    def add(self, a: int, b: int) -> int:
        c = a + b
        return c - self.q if c >= self.q else c

    def sub(self, a: int, b: int) -> int:
        c = a - b
        return c + self.q if c < 0 else c

    def neg(self, a: int) -> int:
        return self.q - a if a else 0

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.q - 2, self.q)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"


class RationalField:
    """Exact rationals; only intended for small hand-checked examples."""

    __slots__ = ()

    q = RATIONAL_MODULUS

    @property
    def modulus(self) -> int:
        return RATIONAL_MODULUS

    @property
    def is_rational(self) -> bool:
        return True

    def normalize(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def __repr__(self) -> str:
        return "RationalField()"


Field = Union[PrimeField, RationalField]


def field_for(modulus: int) -> Field:
    """Field context for a modulus; 0 selects exact rationals."""
    if modulus == RATIONAL_MODULUS:
        return RationalField()
    return PrimeField(modulus)


def monomial_degree(e: Exponents) -> int:
    return sum(e)


def monomial_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Exponents, b: Exponents) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(e: Exponents):
    # graded reverse lexicographic, largest key = leading monomial
    return (sum(e), tuple(-v for v in reversed(e)))


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries the failing position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[-+*^/]))")


class Polynomial:
    """Immutable-by-convention sparse polynomial.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero field
    elements.  All arithmetic returns fresh objects; nothing mutates a
    polynomial after construction.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[Exponents, Coeff]):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[Exponents, Coeff] = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError(f"exponent tuple {e} does not have {nvars} entries")
            c = field.normalize(c)
            if c:
                clean[tuple(int(v) for v in e)] = c
        self.field = field
        self.nvars = nvars
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Polynomial":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> "Polynomial":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: Field, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        e = [0] * nvars
        e[index] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, field: Field, exponents: Sequence[int], coeff=1) -> "Polynomial":
        e = tuple(int(v) for v in exponents)
        return cls(field, len(e), {e: coeff})

    # ---- basic structure ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, k: int) -> "Polynomial":
        return Polynomial(
            self.field, self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k}
        )

    def coefficient(self, exponents: Sequence[int]):
        return self.terms.get(tuple(exponents), self.field.normalize(0))

    def iter_terms(self) -> Iterator[tuple[Exponents, Coeff]]:
        return iter(sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True))

    def support_variables(self) -> set[int]:
        used: set[int] = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(i)
        return used

    # ---- arithmetic -----------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def add(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        fld = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = fld.add(out.get(e, 0), c) if not fld.is_rational else out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(fld, self.nvars, out)

    def neg(self) -> "Polynomial":
        fld = self.field
        return Polynomial(fld, self.nvars, {e: fld.neg(c) for e, c in self.terms.items()})

    def sub(self, other: "Polynomial") -> "Polynomial":
        return self.add(other.neg())

    def scale(self, c) -> "Polynomial":
        fld = self.field
        c = fld.normalize(c)
        if not c:
            return Polynomial.zero(fld, self.nvars)
        return Polynomial(fld, self.nvars, {e: fld.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, exponents: Exponents, coeff=1) -> "Polynomial":
        fld = self.field
        coeff = fld.normalize(coeff)
        if not coeff:
            return Polynomial.zero(fld, self.nvars)
        out = {}
        for e, c in self.terms.items():
            out[monomial_mul(e, exponents)] = fld.mul(c, coeff)
        return Polynomial(fld, self.nvars, out)

    def mul(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        fld = self.field
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out: dict[Exponents, Coeff] = {}
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                e = monomial_mul(e1, e2)
                s = out.get(e, 0) + c1 * c2
                out[e] = s
        if not fld.is_rational:
            q = fld.q
            out = {e: v % q for e, v in out.items() if v % q}
        return Polynomial(fld, self.nvars, out)

    def pow(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base) if k > 1 else base
            k >>= 1
        return result

    __add__ = add
    __sub__ = sub
    __mul__ = mul
    __neg__ = neg

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r} mod {self.field.modulus})"

    # ---- calculus -------------------------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        """Formal partial derivative; exponent multiples reduced in the field."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        fld = self.field
        out: dict[Exponents, Coeff] = {}
        for e, c in self.terms.items():
            k = e[index]
            if not k:
                continue
            ne = list(e)
            ne[index] = k - 1
            cc = fld.normalize(c * k)
            if cc:
                ne_t = tuple(ne)
                prev = out.get(ne_t)
                out[ne_t] = fld.add(prev, cc) if prev is not None and not fld.is_rational else (
                    (prev + cc) if prev is not None else cc
                )
        return Polynomial(fld, self.nvars, out)

    def directional_derivative(self, direction: Sequence) -> "Polynomial":
        """Derivative along a coordinate vector: sum_i v_i * d/dx_i."""
        if len(direction) != self.nvars:
            raise ValueError("direction has wrong length")
        fld = self.field
        acc = Polynomial.zero(fld, self.nvars)
        for i, v in enumerate(direction):
            v = fld.normalize(v)
            if v:
                acc = acc.add(self.partial_derivative(i).scale(v))
        return acc

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        fld = self.field
        pt = [fld.normalize(v) for v in point]
        total = fld.normalize(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    if fld.is_rational:
                        v = v * pt[i] ** k
                    else:
                        v = v * pow(pt[i], k, fld.q) % fld.q
            total = fld.add(total, fld.normalize(v))
        return total

    def shift(self, point: Sequence) -> "Polynomial":
        """Recentered polynomial P(point + x), expanded exactly.

        The degree-k homogeneous component of the result collects the
        k-th order behaviour of P at ``point``; its coefficient on x^i
        equals (d^i P / dx^i)(point) / i!.
        """
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        fld = self.field
        pt = [fld.normalize(v) for v in point]
        n = self.nvars
        out: dict[Exponents, Coeff] = {}
        zero_expt = (0,) * n
        for e, c in self.terms.items():
            # expand prod_i (p_i + x_i)^{e_i} one variable at a time
            partial: dict[Exponents, Coeff] = {zero_expt: c}
            for i, k in enumerate(e):
                if not k:
                    continue
                p_i = pt[i]
                if p_i == 0:
                    nxt = {}
                    for ee, cc in partial.items():
                        le = list(ee)
                        le[i] += k
                        nxt[tuple(le)] = cc
                    partial = nxt
                    continue
                # binomial row for (p_i + x_i)^k
                row = []
                binom = 1
                ppow = [1] * (k + 1)
                for j in range(1, k + 1):
                    ppow[j] = fld.mul(ppow[j - 1], p_i) if not fld.is_rational else ppow[j - 1] * p_i
                for j in range(k + 1):
                    row.append(fld.normalize(binom * ppow[k - j]))
                    binom = binom * (k - j) // (j + 1)
                nxt = {}
                for ee, cc in partial.items():
                    for j, rc in enumerate(row):
                        if not rc:
                            continue
                        le = list(ee)
                        le[i] += j
                        key = tuple(le)
                        s = nxt.get(key, 0) + cc * rc
                        nxt[key] = s
                partial = {k2: fld.normalize(v2) for k2, v2 in nxt.items() if fld.normalize(v2)}
            for ee, cc in partial.items():
                s = out.get(ee, 0) + cc
                out[ee] = s
        return Polynomial(fld, n, out)

    def compose_linear(self, matrix: Sequence[Sequence]) -> "Polynomial":
        """Substitute x_i -> sum_j matrix[i][j] * y_j for every variable.

        ``matrix`` has nvars rows; the number of columns sets the number
        of variables of the result (square matrices are projective
        coordinate changes, rectangular ones restrict to a linear
        subspace or pull back along a linear projection).
        """
        fld = self.field
        n = self.nvars
        if len(matrix) != n or not matrix[0]:
            raise ValueError("substitution matrix has wrong shape")
        m = len(matrix[0])
        if any(len(r) != m for r in matrix):
            raise ValueError("substitution matrix has ragged rows")
        lin = [
            Polynomial(fld, m, {tuple(1 if j == k else 0 for k in range(m)): fld.normalize(matrix[i][j])
                                for j in range(m) if fld.normalize(matrix[i][j])})
            for i in range(n)
        ]
        # Horner-style recursion over variables keeps intermediate growth down
        def rec(terms: list[tuple[Exponents, Coeff]], var: int) -> Polynomial:
            if not terms:
                return Polynomial.zero(fld, m)
            if var == n:
                # all exponents exhausted
                total = fld.normalize(0)
                for _, c in terms:
                    total = fld.add(total, c)
                return Polynomial.constant(fld, m, total)
            buckets: dict[int, list[tuple[Exponents, Coeff]]] = {}
            for e, c in terms:
                buckets.setdefault(e[var], []).append((e, c))
            acc = Polynomial.zero(fld, m)
            Lp: dict[int, Polynomial] = {0: Polynomial.constant(fld, m, 1)}
            maxk = max(buckets)
            for k in range(1, maxk + 1):
                Lp[k] = Lp[k - 1].mul(lin[var])
            for k, sub in buckets.items():
                inner = rec(sub, var + 1)
                acc = acc.add(inner.mul(Lp[k]))
            return acc

        return rec(list(self.terms.items()), 0)

    def substitute_variable(self, index: int, replacement: "Polynomial") -> "Polynomial":
        """Substitute a single variable by a polynomial in the same ring."""
        self._check_compatible(replacement)
        fld = self.field
        buckets: dict[int, dict[Exponents, Coeff]] = {}
        for e, c in self.terms.items():
            k = e[index]
            le = list(e)
            le[index] = 0
            buckets.setdefault(k, {})[tuple(le)] = c
        acc = Polynomial.zero(fld, self.nvars)
        power = Polynomial.constant(fld, self.nvars, 1)
        for k in range(0, max(buckets) + 1 if buckets else 0):
            if k in buckets:
                acc = acc.add(Polynomial(fld, self.nvars, buckets[k]).mul(power))
            power = power.mul(replacement)
        return acc

    # ---- text form ------------------------------------------------------

    def render(self) -> str:
        """Canonical text form; parses back to an equal polynomial."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.iter_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i}")
                elif k > 1:
                    factors.append(f"x{i}^{k}")
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(body)
        return " + ".join(parts)

    def digest(self) -> str:
        """Stable content hash of the canonical rendering."""
        payload = f"{self.field.modulus}|{self.nvars}|{self.render()}"
        return hashlib.blake2b(payload.encode(), digest_size=16).hexdigest()

    @classmethod
    def parse(cls, text: str, nvars: int, field: Field) -> "Polynomial":
        """Parse the grammar described in the module docstring."""
        tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip() == "":
                    break
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
            if m.group("int") is not None:
                tokens.append(("int", m.group("int"), m.start("int")))
            elif m.group("var") is not None:
                tokens.append(("var", m.group("var"), m.start("var")))
            else:
                tokens.append(("op", m.group("op"), m.start("op")))
            pos = m.end()
        terms: dict[Exponents, Coeff] = {}
        i = 0
        sign = 1
        first = True

        def fail(msg: str, at: int):
            raise ParseError(msg, at)

        if not tokens:
            fail("empty polynomial", 0)
        while i < len(tokens):
            kind, val, at = tokens[i]
            if kind == "op":
                if val == "+":
                    sign = 1
                elif val == "-":
                    sign = -1
                else:
                    fail(f"unexpected operator {val!r}", at)
                if first and val not in "+-":
                    fail("term expected", at)
                i += 1
                kind, val, at = tokens[i] if i < len(tokens) else ("end", "", len(text))
            elif not first:
                fail("operator expected between terms", at)
            first = False
            coeff: Coeff = 1
            exps = [0] * nvars
            saw_factor = False
            if kind == "int":
                num = int(val)
                i += 1
                if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "/":
                    if not field.is_rational:
                        fail("rational coefficient in prime-field polynomial", tokens[i][2])
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "int":
                        fail("denominator expected", tokens[i][2])
                    coeff = Fraction(num, int(tokens[i + 1][1]))
                    i += 2
                else:
                    coeff = num
                saw_factor = True
                if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "var":
                        fail("variable expected after '*'", at)
            while i < len(tokens) and tokens[i][0] == "var":
                saw_factor = True
                idx = int(tokens[i][1][1:])
                if idx >= nvars:
                    fail(f"variable x{idx} exceeds ring with {nvars} variables", tokens[i][2])
                i += 1
                expo = 1
                if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "int":
                        fail("exponent expected after '^'", tokens[i][2])
                    expo = int(tokens[i + 1][1])
                    i += 2
                exps[idx] += expo
                if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] not in ("var", "int"):
                        fail("factor expected after '*'", tokens[i][2])
                    if tokens[i + 1][0] == "int":
                        fail("coefficient must precede variables in a term", tokens[i + 1][2])
                    i += 1
            if not saw_factor:
                fail("term expected", at)
            key = tuple(exps)
            c = field.normalize(terms.get(key, 0) + sign * coeff)
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return cls(field, nvars, terms)


class ProjPoint:
    """Point of projective space, stored with first nonzero coordinate 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: Sequence):
        vals = [field.normalize(v) for v in coords]
        if all(v == 0 for v in vals):
            raise ValueError("projective point needs a nonzero coordinate")
        pivot = next(v for v in vals if v != 0)
        inv = field.inv(pivot)
        self.field = field
        self.coords = tuple(field.mul(v, inv) if v else field.normalize(0) for v in vals)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjPoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.coords))

    def __repr__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def proportional(u: Sequence, v: Sequence, field: Field) -> bool:
    """True when u and v span the same line (or one is zero)."""
    uu = [field.normalize(a) for a in u]
    vv = [field.normalize(a) for a in v]
    for i in range(len(uu)):
        for j in range(i + 1, len(uu)):
            det = field.sub(field.mul(uu[i], vv[j]), field.mul(uu[j], vv[i]))
            if det:
                return False
    return True


def restrict_to_line(P: Polynomial, p: Sequence, v: Sequence) -> list:
    """Coefficients [c_0, ..., c_deg] of t in P(p + t*v).

    ``p`` and ``v`` must not be proportional; the list always has
    length deg(P)+1 so vanishing orders read off directly.
    """
    fld = P.field
    n = P.nvars
    if len(p) != n or len(v) != n:
        raise ValueError("point or direction has wrong length")
    pp = [fld.normalize(a) for a in p]
    vv = [fld.normalize(a) for a in v]
    if all(a == 0 for a in vv):
        raise ValueError("direction vector is zero")
    if proportional(pp, vv, fld):
        raise ValueError("direction is proportional to the base point")
    d = max(P.degree(), 0)
    out = [fld.normalize(0)] * (d + 1)
    for e, c in P.terms.items():
        # expand prod_i (p_i + t v_i)^{e_i} as a univariate in t
        uni = [c]
        for i, k in enumerate(e):
            if not k:
                continue
            # binomial coefficients of (p_i + t v_i)^k
            row = [fld.normalize(0)] * (k + 1)
            binom = 1
            for j in range(k + 1):
                term = binom
                term = term * pow(pp[i], k - j, fld.q) % fld.q if not fld.is_rational else term * pp[i] ** (k - j)
                term = term * pow(vv[i], j, fld.q) % fld.q if not fld.is_rational else term * vv[i] ** j
                row[j] = fld.normalize(term)
                binom = binom * (k - j) // (j + 1)
            new = [fld.normalize(0)] * (len(uni) + k)
            for a, ca in enumerate(uni):
                if not ca:
                    continue
                for b, cb in enumerate(row):
                    if not cb:
                        continue
                    new[a + b] = fld.add(new[a + b], fld.mul(ca, cb) if not fld.is_rational else fld.normalize(ca * cb))
            uni = new
        for j, cj in enumerate(uni):
            if cj:
                out[j] = fld.add(out[j], cj)
    return out


def parse_poly(text: str, nvars: int, modulus: int) -> Polynomial:
    """Module-level convenience wrapper around Polynomial.parse."""
    return Polynomial.parse(text, nvars, field_for(modulus))
