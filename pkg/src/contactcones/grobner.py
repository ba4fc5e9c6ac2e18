"""Reduced Groebner bases and dimension machinery.

Buchberger with sugar-strategy pair selection and Gebauer-Moeller pair
pruning, a hard budget on elementary reduction steps, Krull and
projective dimension via independent variable sets modulo the
leading-term ideal, Hilbert functions by staircase counting, and an
exact Macaulay-rank emptiness certificate for systems whose degrees put
a full basis computation out of reach.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .linalg import rank_mod
from .polyring import (
    Exponents,
    Field,
    Polynomial,
    grevlex_key,
    monomial_divides,
    monomial_lcm,
)

DEFAULT_STEP_CAP = 5_000_000
MAX_DIM_VARS = 20


class BudgetExhausted(RuntimeError):
    """A reduction ran past its step cap; never a wrong answer."""

    def __init__(self, spent: int):
        super().__init__(f"reduction budget exhausted after {spent} steps")
        self.spent = spent


class ReductionBudget:
    __slots__ = ("cap", "spent")

    def __init__(self, cap: int | None = None):
        self.cap = DEFAULT_STEP_CAP if cap is None else cap
        self.spent = 0

    def spend(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.cap:
            raise BudgetExhausted(self.spent)


class MonomialOrder:
    """grevlex, lex, or a block elimination order on the first k variables.

    key() is ascending (max = leading); heap_key() is its mirror so a
    min-heap pops the leading monomial first.
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind: str, block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.block = block

    def key(self, e: Exponents):
        if self.kind == "grevlex":
            return (sum(e), tuple(-v for v in reversed(e)))
        if self.kind == "lex":
            return e
        head, tail = e[: self.block], e[self.block :]
        return (grevlex_key(head), grevlex_key(tail))

    def heap_key(self, e: Exponents):
        if self.kind == "grevlex":
            return (-sum(e), tuple(reversed(e)))
        if self.kind == "lex":
            return tuple(-v for v in e)
        head, tail = e[: self.block], e[self.block :]
        return (
            (-sum(head), tuple(reversed(head))),
            (-sum(tail), tuple(reversed(tail))),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __repr__(self) -> str:
        if self.kind == "elim":
            return f"MonomialOrder(elim, block={self.block})"
        return f"MonomialOrder({self.kind})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


class Ideal:
    """Ordered generator list; order matters for regular-sequence tests."""

    __slots__ = ("generators", "nvars", "field")

    def __init__(self, generators: Sequence[Polynomial], nvars: int | None = None,
                 fld: Field | None = None):
        gens = list(generators)
        if not gens and (nvars is None or fld is None):
            raise ValueError("empty ideal needs explicit nvars and field")
        if gens:
            nvars = gens[0].nvars if nvars is None else nvars
            fld = gens[0].field if fld is None else fld
            for g in gens:
                if g.nvars != nvars or g.field != fld:
                    raise ValueError("generators live in different rings")
        self.generators = tuple(gens)
        self.nvars = nvars
        self.field = fld

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def nonzero_generators(self) -> list[Polynomial]:
        return [g for g in self.generators if not g.is_zero()]

    def __repr__(self) -> str:
        return f"Ideal({len(self.generators)} gens, nvars={self.nvars})"


class GroebnerBasis:
    __slots__ = ("basis", "order", "leading_monomials", "nvars", "field")

    def __init__(self, basis: Sequence[Polynomial], order: MonomialOrder,
                 nvars: int, fld: Field):
        self.basis = tuple(basis)
        self.order = order
        self.nvars = nvars
        self.field = fld
        self.leading_monomials = tuple(
            max(g.terms, key=order.key) for g in self.basis
        )

    def contains_one(self) -> bool:
        return any(sum(lt) == 0 for lt in self.leading_monomials)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


# ---- core reduction ------------------------------------------------------


def _lead(terms: dict, order: MonomialOrder) -> Exponents:
    return max(terms, key=order.key)


def _normal_form_dict(terms: dict, reducers: list[tuple[Exponents, dict]],
                      order: MonomialOrder, fld: Field,
                      budget: ReductionBudget) -> dict:
    """Fully reduce a term dict against monic reducers (lead, terms)."""
    if not terms:
        return {}
    rational = fld.is_rational
    q = fld.modulus
    work = dict(terms)
    heap = [(order.heap_key(e), e) for e in work]
    heapq.heapify(heap)
    result: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, 0)
        if not c:
            continue
        hit = None
        for lt, gterms in reducers:
            if monomial_divides(lt, e):
                hit = (lt, gterms)
                break
        if hit is None:
            result[e] = c
            continue
        budget.spend()
        lt, gterms = hit
        shift = tuple(a - b for a, b in zip(e, lt))
        if rational:
            for eg, cg in gterms.items():
                key = tuple(a + b for a, b in zip(eg, shift))
                prev = work.get(key, 0)
                nv = prev - c * cg
                if nv:
                    if not prev:
                        heapq.heappush(heap, (order.heap_key(key), key))
                    work[key] = nv
                elif prev:
                    del work[key]
        else:
            for eg, cg in gterms.items():
                key = tuple(a + b for a, b in zip(eg, shift))
                prev = work.get(key, 0)
                nv = (prev - c * cg) % q
                if nv:
                    if not prev:
                        heapq.heappush(heap, (order.heap_key(key), key))
                    work[key] = nv
                elif prev:
                    del work[key]
        # the popped monomial cancels exactly against the reducer's lead
        work.pop(e, None)
    return result


def _make_monic(terms: dict, order: MonomialOrder, fld: Field) -> dict:
    lt = _lead(terms, order)
    lc = terms[lt]
    if lc == 1:
        return dict(terms)
    inv = fld.inv(lc)
    if fld.is_rational:
        return {e: c * inv for e, c in terms.items()}
    q = fld.q
    return {e: c * inv % q for e, c in terms.items()}


def normal_form(f: Polynomial, basis, order: MonomialOrder | None = None,
                step_cap: int | None = None) -> Polynomial:
    """Unique remainder of f modulo a (preferably Groebner) basis."""
    if isinstance(basis, GroebnerBasis):
        order = basis.order if order is None else order
        polys = list(basis.basis)
    else:
        polys = [g for g in basis if not g.is_zero()]
        order = GREVLEX if order is None else order
    budget = ReductionBudget(step_cap)
    fld = f.field
    reducers = [
        (_lead(g.terms, order), _make_monic(g.terms, order, fld)) for g in polys
    ]
    reducers.sort(key=lambda r: (sum(r[0]), order.key(r[0])))
    out = _normal_form_dict(f.terms, reducers, order, fld, budget)
    return Polynomial(fld, f.nvars, out)


# ---- Buchberger ----------------------------------------------------------


def _update_pairs(pairs: dict, heap: list, lts: list, sugars: list,
                  t: int, order: MonomialOrder) -> None:
    """Gebauer-Moeller update after appending element t."""
    T = lts[t]
    cand = {}
    for i in range(t):
        cand[i] = monomial_lcm(lts[i], T)
    # drop new pairs whose lcm is properly divided by another new lcm
    keep: dict[int, Exponents] = {}
    for i in sorted(cand):
        L = cand[i]
        dominated = False
        for j, Lj in list(keep.items()):
            if Lj == L:
                continue
            if monomial_divides(Lj, L):
                dominated = True
                break
        if dominated:
            continue
        for j, Lj in list(keep.items()):
            if Lj != L and monomial_divides(L, Lj):
                del keep[j]
        keep[i] = L
    # among identical lcms keep the smallest index
    by_lcm: dict[Exponents, int] = {}
    for i in sorted(keep):
        L = keep[i]
        if L not in by_lcm:
            by_lcm[L] = i
    survivors = {i: L for L, i in by_lcm.items()}
    # product criterion: coprime leads reduce to zero
    survivors = {
        i: L
        for i, L in survivors.items()
        if monomial_lcm(lts[i], T) != tuple(a + b for a, b in zip(lts[i], T))
    }
    # chain criterion on the old pair set
    for (i, j), (_, L) in list(pairs.items()):
        if (
            monomial_divides(T, L)
            and cand[i] != L
            and cand[j] != L
        ):
            del pairs[(i, j)]
    for i, L in sorted(survivors.items()):
        sugar = max(
            sugars[i] + sum(L) - sum(lts[i]),
            sugars[t] + sum(L) - sum(T),
        )
        pairs[(i, t)] = (sugar, L)
        heapq.heappush(heap, (sugar, sum(L), order.key(L), i, t))


def _buchberger_dicts(gens: list[dict], order: MonomialOrder, fld: Field,
                      budget: ReductionBudget) -> list[dict]:
    G: list[dict] = []
    lts: list[Exponents] = []
    sugars: list[int] = []
    pairs: dict = {}
    heap: list = []

    def add(terms: dict, sugar: int) -> None:
        t = len(G)
        G.append(terms)
        lts.append(_lead(terms, order))
        sugars.append(sugar)
        _update_pairs(pairs, heap, lts, sugars, t, order)

    for g in gens:
        add(_make_monic(g, order, fld), max(sum(e) for e in g))

    while pairs:
        _, _, _, i, j = heapq.heappop(heap)
        entry = pairs.pop((i, j), None)
        if entry is None:
            continue  # pruned by the chain criterion after being queued
        sugar, L = entry
        si = tuple(a - b for a, b in zip(L, lts[i]))
        sj = tuple(a - b for a, b in zip(L, lts[j]))
        spoly: dict = {}
        if fld.is_rational:
            for e, c in G[i].items():
                key = tuple(a + b for a, b in zip(e, si))
                spoly[key] = spoly.get(key, 0) + c
            for e, c in G[j].items():
                key = tuple(a + b for a, b in zip(e, sj))
                v = spoly.get(key, 0) - c
                if v:
                    spoly[key] = v
                else:
                    spoly.pop(key, None)
        else:
            q = fld.q
            for e, c in G[i].items():
                key = tuple(a + b for a, b in zip(e, si))
                spoly[key] = (spoly.get(key, 0) + c) % q
            for e, c in G[j].items():
                key = tuple(a + b for a, b in zip(e, sj))
                v = (spoly.get(key, 0) - c) % q
                if v:
                    spoly[key] = v
                else:
                    spoly.pop(key, None)
            spoly = {e: c for e, c in spoly.items() if c}
        reducers = list(zip(lts, G))
        nf = _normal_form_dict(spoly, reducers, order, fld, budget)
        if nf:
            add(_make_monic(nf, order, fld), sugar)

    # minimal basis: drop any element whose lead another lead divides
    keep_idx = [
        i
        for i, lt in enumerate(lts)
        if not any(
            j != i and monomial_divides(lts[j], lt) and (lts[j] != lt or j < i)
            for j in range(len(G))
        )
    ]
    minimal = [(lts[i], G[i]) for i in keep_idx]
    # interreduce tails
    reduced: list[dict] = []
    for k, (lt, terms) in enumerate(minimal):
        others = [minimal[m] for m in range(len(minimal)) if m != k]
        nf = _normal_form_dict(terms, [(l, d) for l, d in others], order, fld, budget)
        if nf:
            reduced.append(_make_monic(nf, order, fld))
    reduced.sort(key=lambda d: order.key(_lead(d, order)))
    return reduced


def groebner_basis(source, order: MonomialOrder = GREVLEX,
                   step_cap: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of an Ideal or a generator list."""
    if isinstance(source, Ideal):
        gens = source.nonzero_generators()
        nvars, fld = source.nvars, source.field
        if not gens:
            return GroebnerBasis([], order, nvars, fld)
    else:
        gens = [g for g in source if not g.is_zero()]
        if not gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        nvars, fld = gens[0].nvars, gens[0].field
    if any(g.degree() == 0 for g in gens):
        return GroebnerBasis(
            [Polynomial.constant(fld, nvars, 1)], order, nvars, fld
        )
    budget = ReductionBudget(step_cap)
    out = _buchberger_dicts([g.terms for g in gens], order, fld, budget)
    polys = [Polynomial(fld, nvars, d) for d in out]
    return GroebnerBasis(polys, order, nvars, fld)


# ---- dimension -----------------------------------------------------------


def _substitute_out_linears(gens: list[Polynomial], nvars: int,
                            fld: Field) -> tuple[list[Polynomial], int]:
    """Eliminate variables pinned by homogeneous linear generators.

    Affine (and hence projective) dimension is unchanged: the vanishing
    locus is a graph over the smaller coordinate space.
    """
    gens = [g for g in gens if not g.is_zero()]
    changed = True
    while changed and nvars > 1:
        changed = False
        for idx, g in enumerate(gens):
            if g.degree() != 1 or not g.is_homogeneous():
                continue
            pivot = max(
                i for e in g.terms for i, v in enumerate(e) if v
            )
            a = g.coefficient(tuple(1 if i == pivot else 0 for i in range(nvars)))
            if not a:
                continue
            inv = fld.inv(a)
            rest = {
                e: fld.neg(fld.mul(c, inv))
                for e, c in g.terms.items()
                if e[pivot] == 0
            }
            replacement = Polynomial(fld, nvars, rest)
            new_gens = []
            for k, other in enumerate(gens):
                if k == idx:
                    continue
                new_gens.append(other.substitute_variable(pivot, replacement))
            # drop the pivot coordinate everywhere
            dropped = []
            for other in new_gens:
                terms = {}
                for e, c in other.terms.items():
                    assert e[pivot] == 0
                    terms[e[:pivot] + e[pivot + 1 :]] = c
                dropped.append(Polynomial(fld, nvars - 1, terms))
            gens = [g2 for g2 in dropped if not g2.is_zero()]
            nvars -= 1
            changed = True
            break
    return gens, nvars


def _independent_set_dimension(lt_list: Sequence[Exponents], nvars: int) -> int:
    if nvars > MAX_DIM_VARS:
        raise ValueError(f"dimension search over {nvars} variables refused")
    masks = []
    for lt in lt_list:
        m = 0
        for i, v in enumerate(lt):
            if v:
                m |= 1 << i
        masks.append(m)
    if 0 in masks:
        return -1  # unit ideal
    best = -1
    for subset in range(1 << nvars):
        if all(mask & ~subset for mask in masks):
            size = subset.bit_count()
            if size > best:
                best = size
    return best


def krull_dimension(source, step_cap: int | None = None) -> int:
    """Dimension of the affine vanishing locus; -1 for the unit ideal."""
    if isinstance(source, Ideal):
        gens, nvars, fld = list(source.generators), source.nvars, source.field
    else:
        gens = list(source)
        if not gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        nvars, fld = gens[0].nvars, gens[0].field
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return nvars
    if all(g.is_homogeneous() for g in gens):
        gens, nvars = _substitute_out_linears(gens, nvars, fld)
        if not gens:
            return nvars
    gb = groebner_basis(Ideal(gens, nvars, fld), GREVLEX, step_cap)
    if gb.contains_one():
        return -1
    return _independent_set_dimension(gb.leading_monomials, nvars)


def projective_dimension(source, step_cap: int | None = None) -> int:
    """Dimension of the projective scheme; -1 when empty."""
    if isinstance(source, Ideal):
        ideal = source
    else:
        ideal = Ideal(list(source))
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise ValueError("projective dimension needs homogeneous generators")
    affine = krull_dimension(ideal, step_cap)
    return max(affine - 1, -1)


def hilbert_function(source, t: int, step_cap: int | None = None) -> int:
    """dim of the degree-t piece of the graded quotient ring."""
    if t < 0:
        raise ValueError("negative degree")
    if isinstance(source, GroebnerBasis):
        nvars = source.nvars
        lts = source.leading_monomials
    else:
        ideal = source if isinstance(source, Ideal) else Ideal(list(source))
        for g in ideal.generators:
            if not g.is_homogeneous():
                raise ValueError("Hilbert function needs homogeneous generators")
        if not ideal.nonzero_generators():
            return math.comb(ideal.nvars - 1 + t, t)
        gb = groebner_basis(ideal, GREVLEX, step_cap)
        nvars = ideal.nvars
        lts = gb.leading_monomials
    if any(sum(lt) == 0 for lt in lts):
        return 0
    monos = monomials_of_degree(nvars, t)
    if not lts:
        return len(monos)
    M = np.array(monos, dtype=np.int64)
    L = np.array(lts, dtype=np.int64)
    divisible = (M[:, None, :] >= L[None, :, :]).all(axis=2).any(axis=1)
    return int((~divisible).sum())


def is_regular_sequence(gens: Sequence[Polynomial],
                        step_cap: int | None = None) -> tuple[bool, int]:
    """Longest prefix with dimension drops of exactly one per element."""
    gens = list(gens)
    if not gens:
        return (True, 0)
    nvars = gens[0].nvars
    for i, g in enumerate(gens):
        if g.is_zero():
            raise ValueError(f"zero generator at index {i}")
        if not g.is_homogeneous() or g.degree() < 1:
            raise ValueError(f"generator {i} is not homogeneous of positive degree")
    alpha = 0
    prev = nvars
    for i in range(1, len(gens) + 1):
        dim_i = krull_dimension(Ideal(gens[:i]), step_cap)
        if dim_i == prev - 1:
            alpha = i
            prev = dim_i
        else:
            break
    return (alpha == len(gens), alpha)


def eliminate(source, k: int, step_cap: int | None = None) -> Ideal:
    """Generators of the intersection with the subring of trailing variables."""
    ideal = source if isinstance(source, Ideal) else Ideal(list(source))
    if not 0 < k < ideal.nvars:
        raise ValueError(f"cannot eliminate {k} of {ideal.nvars} variables")
    gb = groebner_basis(ideal, elimination_order(k), step_cap)
    kept = [
        g for g in gb.basis
        if all(i >= k for i in g.support_variables())
    ]
    return Ideal(kept, ideal.nvars, ideal.field)


# ---- staircase helpers ---------------------------------------------------


def monomials_of_degree(nvars: int, t: int) -> list[Exponents]:
    """All exponent tuples of total degree t, deterministic order."""
    if nvars == 1:
        return [(t,)]
    out = []
    for first in range(t, -1, -1):
        for rest in monomials_of_degree(nvars - 1, t - first):
            out.append((first,) + rest)
    return out


# ---- Macaulay emptiness certificate --------------------------------------


@dataclass
class EmptinessCertificate:
    status: str              # "empty", "nonempty", or "budget"
    degree: int              # Macaulay degree tested
    columns: int
    rows: int
    rank: int | None = None


@dataclass
class SlicedDimension:
    lower_bound: int         # unconditional: ambient minus generator count
    exact: int | None        # set when an empty slice certifies the upper bound
    slices_tested: int
    certificate: EmptinessCertificate | None
    notes: list[str] = dc_field(default_factory=list)


def macaulay_degree(degrees: Sequence[int], m: int) -> int:
    """Degree at which emptiness in P^m is decided by column rank."""
    ds = sorted(degrees, reverse=True)[: min(len(degrees), m + 1)]
    return max(sum(ds) - m, max(degrees))


def certify_projective_emptiness(gens: Sequence[Polynomial], q: int,
                                 column_budget: int = 6000,
                                 entry_budget: int = 30_000_000) -> EmptinessCertificate:
    """Decide emptiness of V(gens) over the algebraic closure.

    Full column rank of the multiplication matrix at the Macaulay degree
    is equivalent to emptiness; both directions of the certificate are
    sound, with no genericity assumption.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("emptiness of the whole space is not a sensible query")
    nvars = gens[0].nvars
    m = nvars - 1
    degrees = [g.degree() for g in gens]
    if any(d < 1 for d in degrees):
        return EmptinessCertificate("empty", 0, 0, 0, None)  # unit ideal
    t = macaulay_degree(degrees, m)
    cols_list = monomials_of_degree(nvars, t)
    ncols = len(cols_list)
    nrows = sum(math.comb(t - d + m, m) for d in degrees)
    if ncols > column_budget or ncols * nrows > entry_budget:
        return EmptinessCertificate("budget", t, ncols, nrows, None)
    col_index = {e: i for i, e in enumerate(cols_list)}
    rows = np.zeros((nrows, ncols), dtype=np.int64)
    r = 0
    for g in gens:
        d = g.degree()
        for mono in monomials_of_degree(nvars, t - d):
            for e, c in g.terms.items():
                rows[r, col_index[tuple(a + b for a, b in zip(e, mono))]] = int(c)
            r += 1
    assert r == nrows
    rank = rank_mod(rows, q)
    status = "empty" if rank == ncols else "nonempty"
    return EmptinessCertificate(status, t, ncols, nrows, rank)


def random_hyperplane_slice(gens: Sequence[Polynomial], rng: random.Random) -> list[Polynomial]:
    """Substitute the last variable by a random combination of the others."""
    nvars = gens[0].nvars
    fld = gens[0].field
    if fld.is_rational:
        raise ValueError("slicing is a prime-field campaign tool")
    if nvars < 2:
        raise ValueError("cannot slice a ring with one variable")
    coeffs = [rng.randrange(fld.modulus) for _ in range(nvars - 1)]
    if all(c == 0 for c in coeffs):
        coeffs[0] = 1
    replacement = Polynomial(
        fld,
        nvars,
        {
            tuple(1 if j == i else 0 for j in range(nvars)): a
            for i, a in enumerate(coeffs)
            if a
        },
    )
    out = []
    for g in gens:
        sub = g.substitute_variable(nvars - 1, replacement)
        terms = {}
        for e, c in sub.terms.items():
            assert e[-1] == 0
            terms[e[:-1]] = c
        out.append(Polynomial(fld, nvars - 1, terms))
    return out


def projective_dimension_sliced(gens: Sequence[Polynomial], seed: int,
                                column_budget: int = 6000,
                                max_retries: int = 3) -> SlicedDimension:
    """Dimension of V(gens) by hyperplane slicing plus emptiness ranks.

    The ambient-minus-generators lower bound holds without any
    genericity (projective dimension theorem); the exact value is
    certified when slicing lower+1 hyperplanes yields a provably empty
    system within the column budget.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    nvars = gens[0].nvars
    fld = gens[0].field
    m = nvars - 1
    for g in gens:
        if not g.is_homogeneous() or g.degree() < 1:
            raise ValueError("sliced dimension needs homogeneous positive-degree forms")
    lower = m - len(gens)
    notes: list[str] = []
    if lower < 0:
        notes.append("more generators than ambient dimension; lower bound clamped")
        lower = -1
    k = lower + 1
    if k > m:
        return SlicedDimension(lower, None, 0, None,
                               notes + ["slice count exceeds ambient space"])
    rng = random.Random(seed)
    last_cert: EmptinessCertificate | None = None
    for attempt in range(max_retries):
        sliced = gens
        degenerate = False
        for _ in range(k):
            sliced = [g for g in random_hyperplane_slice(sliced, rng) if not g.is_zero()]
            if len(sliced) < len(gens):
                degenerate = True
                break
        if degenerate:
            notes.append(f"attempt {attempt}: a slice killed a generator, resampled")
            continue
        cert = certify_projective_emptiness(sliced, fld.modulus, column_budget)
        last_cert = cert
        if cert.status == "budget":
            notes.append(
                f"Macaulay degree {cert.degree} needs {cert.columns} columns; over budget"
            )
            return SlicedDimension(lower, None, k, cert, notes)
        if cert.status == "empty":
            return SlicedDimension(lower, lower, k, cert, notes)
        notes.append(f"attempt {attempt}: sliced system nonempty, resampling slices")
    notes.append("persistent nonempty slices: dimension may exceed the lower bound")
    return SlicedDimension(lower, None, k, last_cert, notes)
