"""Randomized verification campaigns over prime fields.

Genericity hypotheses have no finite-field analogue, so every campaign
here interprets "general" as: draw random data, gate on the exactly
checkable side conditions (smoothness at the points used, distinctness),
and resample once on failure.  Two consecutive failures on independent
draws are flagged as a probable logic error rather than absorbed as
noise.  Reports are deterministic functions of their configuration: every
per-trial random stream is derived by hashing the master seed with the
trial index and a purpose tag, so worker count never changes the output.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import time
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional, Sequence

from . import solvers
from . import univariate as uni
from .contact import (INFINITE, Hypersurface, cone_ideal, line_contact_order,
                      normalize_chart, tangent_section_multiplicity)
from .grobner import (DEFAULT_STEP_CAP, BudgetExhausted, monomials_of_degree,
                      projective_dimension)
from .invariants import HypothesisViolation
from .polar import (NOT_FOUND_OVER_Fq, connecting_dimension,
                    find_connecting_vertex)
from .polyring import (Polynomial, ProjPoint, field_for, proportional,
                       restrict_to_line)

REPORT_VERSION = "1"


def child_seed(master_seed: int, trial: int, purpose: str) -> int:
    """Derived stream seed: hash of (master, trial, tag), stable across runs."""
    h = hashlib.blake2b(digest_size=8)
    h.update(f"{master_seed}/{trial}/{purpose}".encode())
    return int.from_bytes(h.digest(), "big")


@dataclass(frozen=True)
class CampaignConfig:
    n: int
    d: int
    modulus: int = 10007
    h_range: tuple[int, int] = (2, 2)
    trials: int = 25
    master_seed: int = 0
    gb_step_cap: int = DEFAULT_STEP_CAP
    retry_budget: int = 40

    def validate(self) -> None:
        field_for(self.modulus)  # primality
        if self.modulus <= self.d:
            raise ValueError("field characteristic must exceed the degree")
        lo, hi = self.h_range
        if not 2 <= lo <= hi <= min(self.n + 1, self.d):
            raise ValueError(
                f"h range must sit inside 2..{min(self.n + 1, self.d)}, got {lo}..{hi}")
        if self.trials <= 0:
            raise ValueError("trials must be positive")

    def echo(self) -> dict:
        return {
            "n": self.n, "d": self.d, "modulus": self.modulus,
            "h_lo": self.h_range[0], "h_hi": self.h_range[1],
            "trials": self.trials, "master_seed": self.master_seed,
            "gb_step_cap": self.gb_step_cap, "retry_budget": self.retry_budget,
        }

    @classmethod
    def from_mapping(cls, m: dict) -> "CampaignConfig":
        known = {}
        for key in ("n", "d", "modulus", "trials", "master_seed",
                    "gb_step_cap", "retry_budget"):
            if key in m:
                known[key] = int(m[key])
        if "h_lo" in m or "h_hi" in m:
            lo = int(m.get("h_lo", m.get("h_hi")))
            hi = int(m.get("h_hi", m.get("h_lo")))
            known["h_range"] = (lo, hi)
        elif "h_range" in m:
            known["h_range"] = tuple(int(v) for v in m["h_range"])
        return cls(**known)


@dataclass
class CampaignReport:
    kind: str
    config: dict
    results: list[dict]
    summary: dict
    elapsed: float = 0.0

    def payload(self) -> dict:
        # wall-clock time stays out of the payload so reports diff cleanly
        return {"config": self.config, "results": self.results,
                "summary": self.summary, "version": REPORT_VERSION}

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2)

    def text_summary(self) -> str:
        parts = [f"{self.kind}: " + ", ".join(
            f"{k}={v}" for k, v in sorted(self.summary.items()))]
        parts.append(f"elapsed: {self.elapsed:.1f}s")
        return "\n".join(parts)


@dataclass(frozen=True)
class PointSample:
    point: ProjPoint
    on_X: bool
    smooth_at: bool
    provenance: tuple[int, int]  # (line seed, root index)


def random_hypersurface(n: int, d: int, modulus: int, seed: int) -> Hypersurface:
    """Uniform coefficients on every degree-d monomial in n+2 variables."""
    fld = field_for(modulus)
    if modulus <= d:
        raise ValueError("field characteristic must exceed the degree")
    rng = Random(seed)
    exps = monomials_of_degree(n + 2, d)
    while True:
        terms = {e: rng.randrange(modulus) for e in exps}
        terms = {e: c for e, c in terms.items() if c}
        if terms:
            return Hypersurface(Polynomial(fld, n + 2, terms))


def sample_point_on_X(X: Hypersurface, seed: int,
                      retry_budget: int = 40) -> PointSample:
    """Rational point of X from seeded random lines.

    Each attempt restricts F to a line through two random points and takes
    the smallest root of the univariate restriction; the second spanning
    point itself serves as the root at infinity.  Smoothness is an exact
    gradient check at the returned point, nothing more.
    """
    q = X.field.modulus
    rng = Random(seed)
    for attempt in range(retry_budget):
        a = [rng.randrange(q) for _ in range(X.nvars)]
        b = [rng.randrange(q) for _ in range(X.nvars)]
        if all(v == 0 for v in a) or all(v == 0 for v in b):
            continue
        if proportional(a, b, X.field):
            continue
        cs = [int(c) for c in restrict_to_line(X.F, a, b)]
        if not any(cs):
            # the whole line lies in X
            pt = tuple(a)
            return PointSample(ProjPoint(X.field, list(pt)), True,
                               X.is_smooth_at(pt), (seed, attempt))
        roots = sorted(uni.roots(cs, q))
        if roots:
            t = roots[0]
            pt = tuple((a[i] + t * b[i]) % q for i in range(X.nvars))
        elif cs[-1] % q == 0 and len(cs) == X.d + 1:
            pt = tuple(b)
        else:
            continue
        return PointSample(ProjPoint(X.field, list(pt)), True,
                           X.is_smooth_at(pt), (seed, attempt))
    raise RuntimeError(
        f"no rational point of X found on {retry_budget} sampled lines")


def _smooth_point(X: Hypersurface, master_seed: int, trial: int, tag: str,
                  retry_budget: int) -> tuple[tuple[int, ...], int]:
    """Sampled smooth point plus the count of singular samples skipped."""
    skipped = 0
    for j in range(retry_budget):
        sample = sample_point_on_X(
            X, child_seed(master_seed, trial, f"{tag}{j}"), retry_budget)
        if sample.smooth_at:
            return tuple(sample.point.coords), skipped
        skipped += 1
    raise RuntimeError("smooth-point budget exhausted; X looks very singular")


def _parallel_records(worker: Callable[[int], dict], trials: int,
                      workers: int) -> list[dict]:
    if workers <= 1:
        return [worker(t) for t in range(trials)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(worker, range(trials)))
    return records  # pool.map preserves order, so reports stay byte-identical


# ---------------------------------------------------------------- dimension

def _dimension_checks(X: Hypersurface, p: tuple[int, ...], h_lo: int, h_hi: int,
                      step_cap: int) -> list[dict]:
    checks = []
    for h in range(h_lo, h_hi + 1):
        expected = X.n + 2 - h
        try:
            computed = projective_dimension(cone_ideal(X, p, h).to_ideal(),
                                            step_cap=step_cap)
            status = "pass" if computed == expected else "fail"
        except BudgetExhausted:
            computed = None
            status = "cap"
        checks.append({"h": h, "computed": computed, "expected": expected,
                       "status": status})
    return checks


class _DimensionTrial:
    def __init__(self, cfg: CampaignConfig):
        self.cfg = cfg

    def __call__(self, t: int) -> dict:
        cfg = self.cfg
        record = {"trial": t, "resampled": False, "singular_skips": 0}
        for round_tag in ("F", "F-resample"):
            seed_F = child_seed(cfg.master_seed, t, round_tag)
            X = random_hypersurface(cfg.n, cfg.d, cfg.modulus, seed_F)
            p, skipped = _smooth_point(X, cfg.master_seed, t, f"{round_tag}/p",
                                       cfg.retry_budget)
            record["singular_skips"] += skipped
            checks = _dimension_checks(X, p, cfg.h_range[0], cfg.h_range[1],
                                       cfg.gb_step_cap)
            record.update({"seed": seed_F, "digest": X.F.digest(),
                           "point": list(p), "checks": checks})
            if any(c["status"] == "cap" for c in checks):
                record["status"] = "cap"
                return record
            if all(c["status"] == "pass" for c in checks):
                record["status"] = "resampled-pass" if record["resampled"] else "pass"
                return record
            if round_tag == "F":
                record["resampled"] = True
                continue
            # two independent draws failed: almost certainly a logic error
            record["status"] = "fail"
            record["red_flag"] = True
            record["F"] = X.F.render()
            return record
        return record


def _summarize(records: list[dict]) -> dict:
    counts = {"passes": 0, "fails": 0, "resamples": 0, "capped": 0}
    for r in records:
        key = {"pass": "passes", "fail": "fails",
               "resampled-pass": "resamples", "cap": "capped"}[r["status"]]
        counts[key] += 1
    counts["trials"] = len(records)
    counts["red_flags"] = sum(1 for r in records if r.get("red_flag"))
    counts["all_pass"] = counts["fails"] == 0
    return counts


def verify_dimension_theorem(cfg: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Cone dimension n+2-h at sampled smooth points, every h in range."""
    cfg.validate()
    start = time.monotonic()
    records = _parallel_records(_DimensionTrial(cfg), cfg.trials, workers)
    return CampaignReport("dimension", cfg.echo(), records,
                          _summarize(records), time.monotonic() - start)


# ------------------------------------------------------------- multiplicity

def multiplicity_check(X: Hypersurface, p) -> dict:
    """Tangent-section multiplicity at p plus the normalized-chart cross-check.

    flag is raised whenever the multiplicity is not exactly 2, which is the
    deep-tangency situation the campaign is hunting for.
    """
    m = tangent_section_multiplicity(X, p)
    chart = normalize_chart(X, p)
    quadratic_nonzero = not chart.part(2).is_zero()
    if quadratic_nonzero != (m == 2):
        raise AssertionError("chart quadratic part disagrees with the normal form")
    return {"multiplicity": "INFINITE" if m is INFINITE else m,
            "chart_quadratic_nonzero": quadratic_nonzero,
            "flag": m != 2}


class _MultiplicityTrial:
    def __init__(self, cfg: CampaignConfig):
        self.cfg = cfg

    def __call__(self, t: int) -> dict:
        cfg = self.cfg
        record = {"trial": t, "resampled": False, "singular_skips": 0}
        for round_tag in ("F", "F-resample"):
            seed_F = child_seed(cfg.master_seed, t, round_tag)
            X = random_hypersurface(cfg.n, cfg.d, cfg.modulus, seed_F)
            p, skipped = _smooth_point(X, cfg.master_seed, t, f"{round_tag}/p",
                                       cfg.retry_budget)
            record["singular_skips"] += skipped
            check = multiplicity_check(X, p)
            record.update({"seed": seed_F, "digest": X.F.digest(),
                           "point": list(p), "check": check})
            if not check["flag"]:
                record["status"] = "resampled-pass" if record["resampled"] else "pass"
                return record
            if round_tag == "F":
                record["resampled"] = True
                continue
            record["status"] = "fail"
            record["red_flag"] = True
            record["F"] = X.F.render()
            return record
        return record


def verify_multiplicity_lemma(cfg: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Multiplicity of X cut by its tangent hyperplane is exactly 2."""
    cfg.validate()
    start = time.monotonic()
    records = _parallel_records(_MultiplicityTrial(cfg), cfg.trials, workers)
    return CampaignReport("multiplicity", cfg.echo(), records,
                          _summarize(records), time.monotonic() - start)


# ---------------------------------------------------------------- connecting

class _ConnectingTrial:
    def __init__(self, cfg: CampaignConfig, exhaustive_cap: int):
        self.cfg = cfg
        self.exhaustive_cap = exhaustive_cap

    def __call__(self, t: int) -> dict:
        cfg = self.cfg
        h = cfg.h_range[0]
        expected = cfg.n + 2 - 2 * h
        seed_F = child_seed(cfg.master_seed, t, "F")
        X = random_hypersurface(cfg.n, cfg.d, cfg.modulus, seed_F)
        q1, skips1 = _smooth_point(X, cfg.master_seed, t, "q1/", cfg.retry_budget)
        for j in range(cfg.retry_budget):
            q2, skips2 = _smooth_point(X, cfg.master_seed, t, f"q2/{j}/",
                                       cfg.retry_budget)
            if not proportional(q1, q2, X.field):
                break
        else:
            raise RuntimeError("could not sample two distinct points")
        sd = connecting_dimension(X, q1, q2, h,
                                  seed=child_seed(cfg.master_seed, t, "slice"))
        dim_ok = sd.lower_bound >= expected and (sd.exact is None
                                                 or sd.exact >= expected)
        record = {
            "trial": t, "seed": seed_F, "digest": X.F.digest(), "h": h,
            "q1": list(q1), "q2": list(q2),
            "singular_skips": skips1 + skips2,
            "dim_lower": sd.lower_bound, "dim_exact": sd.exact,
            "dim_expected": expected, "status": "pass" if dim_ok else "fail",
        }
        if not dim_ok:
            record["F"] = X.F.render()
        witness = find_connecting_vertex(
            X, q1, q2, h, seed=child_seed(cfg.master_seed, t, "witness"),
            exhaustive_cap=self.exhaustive_cap)
        if witness:
            wc = tuple(witness.coords)
            verified = (line_contact_order(X, wc, q1) >= h
                        and line_contact_order(X, wc, q2) >= h)
            record.update({"witness": list(wc), "witness_found": True,
                           "witness_verified": verified})
            if not verified:
                record["status"] = "fail"
                record["F"] = X.F.render()
        else:
            record.update({"witness": repr(NOT_FOUND_OVER_Fq),
                           "witness_found": False, "witness_verified": False})
        return record


def verify_connecting_lemma(cfg: CampaignConfig, workers: int = 1,
                            exhaustive_cap: int = 600_000) -> CampaignReport:
    """Connecting-vertex locus: hard dimension bound, soft rational witness.

    The dimension inequality >= n+2-2h must hold in every trial; failing to
    exhibit a rational vertex over F_q is only logged, since rationality of
    a nonempty locus is a property of the field, not of the statement.
    """
    cfg.validate()
    h_lo, h_hi = cfg.h_range
    if h_lo != h_hi:
        raise ValueError("connecting campaigns run one h at a time")
    if h_lo > cfg.n // 2 + 1:
        raise HypothesisViolation(
            f"connecting lemma needs h <= n/2 + 1 = {cfg.n // 2 + 1}, got {h_lo}")
    start = time.monotonic()
    records = _parallel_records(_ConnectingTrial(cfg, exhaustive_cap),
                                cfg.trials, workers)
    summary = _summarize(records)
    summary["witnesses"] = sum(1 for r in records if r["witness_found"])
    summary["witness_rate_pct"] = 100 * summary["witnesses"] // max(1, len(records))
    return CampaignReport("connecting", cfg.echo(), records, summary,
                          time.monotonic() - start)


# ---------------------------------------------------------- projection degree

def _linear_kernel_columns(coeffs: Sequence[int], q: int) -> list[list[int]]:
    """Columns spanning the kernel of a nonzero 1 x m row over F_q."""
    m = len(coeffs)
    jstar = next(i for i, c in enumerate(coeffs) if c % q)
    inv = pow(coeffs[jstar], q - 2, q)
    cols = []
    for i in range(m):
        if i == jstar:
            continue
        col = [0] * m
        col[i] = 1
        col[jstar] = (-coeffs[i] * inv) % q
        cols.append(col)
    return cols


def _columns_to_matrix(cols: list[list[int]]) -> list[list[int]]:
    m = len(cols[0])
    return [[cols[j][i] for j in range(len(cols))] for i in range(m)]


def _linear_coeffs(f: Polynomial) -> list[int]:
    out = [0] * f.nvars
    for e, c in f.terms.items():
        out[e.index(1)] = int(c)
    return out


def verify_projection_degree(X: Hypersurface, p, h: int) -> int:
    """Degree of the projection from p on the curve cone, expected d-h.

    Requires the order-h cone at p to be a curve (the h = n+1 regime with
    n in {2, 3}), so that its lines through p are isolated.  A rational
    line is extracted by cutting with a hyperplane missing p and solving
    the restricted system; the fiber of the projection over that line's
    direction is the residual divisor of the line against X, whose length
    is read off the line restriction.  Degenerate picks (deeper contact
    than h, or a direction lying on X) are skipped; per fiber the contact
    order plus the residual length must reproduce d on the nose.
    """
    q = X.field.modulus
    fld = X.field
    pc = tuple(int(v) % q for v in (p.coords if isinstance(p, ProjPoint) else p))
    ci = cone_ideal(X, pc, h)
    if h != X.n + 1 or X.n not in (2, 3):
        raise ValueError("projection degree is implemented for curve cones, h = n+1, n in {2, 3}")
    if projective_dimension(ci.to_ideal()) != 1:
        raise ValueError("the contact cone at this point is not a curve")
    tag = f"{X.F.digest()}|{','.join(map(str, pc))}|{h}"
    seed = int.from_bytes(hashlib.blake2b(tag.encode(), digest_size=8).digest(), "big")
    rng = Random(seed)
    nvars = X.nvars
    last_error = "no rational cone direction over this field"
    for _ in range(16):
        W = [rng.randrange(q) for _ in range(nvars)]
        if sum(W[i] * pc[i] for i in range(nvars)) % q == 0:
            continue
        B = _columns_to_matrix(_linear_kernel_columns(W, q))
        restricted = [g.compose_linear(B) for g in ci.generators]
        lin = restricted[0]
        if lin.is_zero() or lin.degree() != 1:
            continue
        K = _columns_to_matrix(_linear_kernel_columns(_linear_coeffs(lin), q))
        sections = [g.compose_linear(K) for g in restricted[1:]]
        if any(s.is_zero() for s in sections):
            continue
        try:
            if X.n == 2:
                roots = solvers.binary_form_roots(sections[0])
            else:
                roots = solvers.ternary_pair_solutions(*sections)
        except solvers.DegenerateSystem:
            continue
        if not roots:
            last_error = "no rational cone direction over this field"
            continue
        fibers = []
        for u in roots:
            ku = [sum(K[i][j] * u[j] for j in range(len(u))) % q
                  for i in range(len(K))]
            w = tuple(sum(B[i][j] * ku[j] for j in range(len(ku))) % q
                      for i in range(nvars))
            if not any(w) or proportional(pc, w, fld):
                continue
            cs = [int(c) for c in restrict_to_line(X.F, pc, w)]
            contact = next((k for k, c in enumerate(cs) if c), None)
            if contact is None or contact < h:
                raise AssertionError("extracted direction is not a cone line")
            if contact != h or cs[-1] == 0:
                last_error = "all rational cone lines degenerate for this point"
                continue
            residual = len(cs) - 1 - contact
            if contact + residual != X.d:
                raise AssertionError("contact plus residual must exhaust the degree")
            fibers.append(residual)
        if fibers:
            if len(set(fibers)) != 1:
                raise AssertionError("fiber degrees disagree across cone lines")
            return fibers[0]
    raise RuntimeError(last_error)
