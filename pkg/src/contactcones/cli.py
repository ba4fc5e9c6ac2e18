"""Command-line front end.

Exit codes: 0 success or all checks passed, 1 a verification check failed
(a JSON witness goes to stdout), 2 usage or precondition errors, 3 a
resource cap was exhausted before an answer was reached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

from . import __version__
from . import invariants as iv
from . import polar as pol
from . import sampler as sp
from .contact import INFINITE, Hypersurface, cone_ideal, line_contact_order
from .grobner import DEFAULT_STEP_CAP, BudgetExhausted, projective_dimension
from .polyring import parse_poly

_MODULUS_ENV = "CONTACTCONES_MODULUS"


def _default_modulus() -> int:
    raw = os.environ.get(_MODULUS_ENV)
    if raw is None:
        return 10007
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {_MODULUS_ENV} must be an integer, got {raw!r}")


def _parse_point(text: str, nvars: int) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != nvars:
        raise ValueError(f"expected {nvars} comma-separated coordinates, got {len(parts)}")
    return tuple(int(p) for p in parts)


def _parse_h_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    h = int(text)
    return h, h


def _emit(payload: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        doc = dict(payload)
        doc["version"] = __version__
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif fmt == "text":
        for line in text_lines:
            print(line)
    else:
        raise ValueError(f"unsupported format {fmt!r} for this command")


def _hypersurface(args) -> Hypersurface:
    nvars = args.n + 2
    return Hypersurface(parse_poly(args.poly, nvars, args.modulus))


def _cmd_cone(args) -> int:
    X = _hypersurface(args)
    p = _parse_point(args.point, X.nvars)
    ci = cone_ideal(X, p, args.h)
    dim = projective_dimension(ci.to_ideal(), step_cap=args.gb_step_cap)
    expected = X.n + 2 - args.h
    gens = [g.render() for g in ci.generators]
    payload = {
        "config": {"n": X.n, "d": X.d, "h": args.h, "modulus": args.modulus,
                   "point": list(p)},
        "results": {"generators": gens, "dimension": dim, "expected": expected},
        "summary": {"matches_expected": dim == expected},
    }
    lines = [f"G_{k + 1} = {g}" for k, g in enumerate(gens)]
    lines.append(f"dim = {dim} (expected {expected})")
    _emit(payload, args.format, lines)
    return 0 if dim == expected else 1


def _cmd_dim(args) -> int:
    X = _hypersurface(args)
    p = _parse_point(args.point, X.nvars)
    lo, hi = args.h
    checks = []
    capped = False
    for h in range(lo, hi + 1):
        expected = X.n + 2 - h
        try:
            d = projective_dimension(cone_ideal(X, p, h).to_ideal(),
                                     step_cap=args.gb_step_cap)
            checks.append({"h": h, "computed": d, "expected": expected,
                           "status": "pass" if d == expected else "fail"})
        except BudgetExhausted:
            checks.append({"h": h, "computed": None, "expected": expected,
                           "status": "cap"})
            capped = True
    # capped checks are inconclusive, not failures
    ok = all(c["status"] != "fail" for c in checks)
    payload = {
        "config": {"n": X.n, "d": X.d, "h_lo": lo, "h_hi": hi,
                   "modulus": args.modulus, "point": list(p)},
        "results": checks,
        "summary": {"all_pass": ok and not capped, "capped": capped},
    }
    lines = [f"h={c['h']}: dim {c['computed']} expected {c['expected']} [{c['status']}]"
             for c in checks]
    _emit(payload, args.format, lines)
    if capped and ok:
        return 3
    return 0 if ok else 1


def _cmd_contact(args) -> int:
    X = _hypersurface(args)
    p = _parse_point(args.point, X.nvars)
    v = _parse_point(args.direction, X.nvars)
    order = line_contact_order(X, p, v)
    shown = "INFINITE" if order is INFINITE else order
    payload = {
        "config": {"n": X.n, "d": X.d, "modulus": args.modulus,
                   "point": list(p), "direction": list(v)},
        "results": {"contact_order": shown},
        "summary": {"line_in_X": order is INFINITE},
    }
    _emit(payload, args.format, [f"contact order = {shown}"])
    return 0


def _cmd_polar(args) -> int:
    X = _hypersurface(args)
    pole = _parse_point(args.pole, X.nvars)
    results: dict = {}
    lines: list[str] = []
    if args.s is not None:
        f = pol.polar_poly(X, pole, args.s)
        results["polar"] = f.render()
        results["degree"] = None if f.is_zero() else f.degree()
        lines.append(f"Pol^{args.s} = {f.render()}")
    h = args.h if args.h is not None else (None if args.s is not None else 2)
    if h is not None:
        system = pol.polar_system(X, pole, h)
        results["system_degrees"] = [g.degree() for g in system.polars]
        lines.append("system degrees: "
                     + ", ".join(str(g.degree()) for g in system.polars))
        if args.point:
            p = _parse_point(args.point, X.nvars)
            member = pol.check_reciprocity(X, p, pole, h)
            order = line_contact_order(X, p, pole)
            shown = "INFINITE" if order is INFINITE else order
            results["in_polar_locus"] = member
            results["contact_order"] = shown
            lines.append(f"p in polar locus: {member} (contact order {shown})")
    payload = {
        "config": {"n": X.n, "d": X.d, "modulus": args.modulus,
                   "pole": list(pole), "s": args.s, "h": h},
        "results": results,
        "summary": {},
    }
    _emit(payload, args.format, lines)
    return 0


def _cmd_connect(args) -> int:
    X = _hypersurface(args)
    q1 = _parse_point(args.q1, X.nvars)
    q2 = _parse_point(args.q2, X.nvars)
    sd = pol.connecting_dimension(X, q1, q2, args.h, seed=args.seed)
    expected = X.n + 2 - 2 * args.h
    witness = pol.find_connecting_vertex(X, q1, q2, args.h, seed=args.seed)
    found = bool(witness)
    payload = {
        "config": {"n": X.n, "d": X.d, "h": args.h, "modulus": args.modulus,
                   "q1": list(q1), "q2": list(q2), "seed": args.seed},
        "results": {
            "dim_lower": sd.lower_bound, "dim_exact": sd.exact,
            "dim_expected": expected,
            "witness": list(witness.coords) if found else repr(witness),
        },
        "summary": {"dim_ok": sd.lower_bound >= expected, "witness_found": found},
    }
    lines = [f"dimension >= {sd.lower_bound} (expected >= {expected}"
             + (f", exact {sd.exact})" if sd.exact is not None else ")")]
    lines.append(f"witness: {list(witness.coords) if found else repr(witness)}")
    _emit(payload, args.format, lines)
    return 0 if sd.lower_bound >= expected else 1


def _cmd_bounds(args) -> int:
    rep = iv.bound_report(args.n, args.d, permissive=args.permissive)
    results = {
        "covgon_lower": rep.covgon_lower, "covgon_upper": rep.covgon_upper,
        "conngon_lower": rep.conngon_lower, "conngon_upper": rep.conngon_upper,
        "conngon_exact": rep.conngon_exact,
        "irr_lower": list(rep.irr_lower),
        "irr_top": {str(k): v for k, v in sorted(rep.irr_top.items())},
        "fano_max_h": rep.fano_h,
        "notes": list(rep.notes),
    }
    payload = {
        "config": {"n": args.n, "d": args.d, "permissive": args.permissive},
        "results": results,
        "summary": {"hypotheses_met": not rep.notes},
    }
    lines = [f"covgon in [{rep.covgon_lower}, {rep.covgon_upper}]"]
    if rep.conngon_lower is not None:
        tail = f" (exact {rep.conngon_exact})" if rep.conngon_exact is not None else ""
        lines.append(f"conngon in [{rep.conngon_lower}, {rep.conngon_upper}]{tail}")
    lines.append("irr lower bounds by k: "
                 + ", ".join(f"{k + 1}:{v}" for k, v in enumerate(rep.irr_lower)))
    lines.append(f"fano_max_h = {rep.fano_h}")
    lines.extend(f"note: {note}" for note in rep.notes)
    _emit(payload, args.format, lines)
    return 0


def table_csv(n_min: int, n_max: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "status", "lower", "upper", "origin"])
    for row in iv.conngon_table(n_min, n_max):
        writer.writerow([row.n, row.status, row.lower, row.upper, row.origin])
    return buf.getvalue()


def _cmd_table(args) -> int:
    rows = iv.conngon_table(args.n_min, args.n_max)
    if args.format == "csv":
        sys.stdout.write(table_csv(args.n_min, args.n_max))
        return 0
    payload = {
        "config": {"n_min": args.n_min, "n_max": args.n_max},
        "results": [{"n": r.n, "status": r.status, "lower": r.lower,
                     "upper": r.upper, "origin": r.origin} for r in rows],
        "summary": {"rows": len(rows)},
    }
    lines = [f"n={r.n}: {r.lower}" + ("" if r.status == "exact"
                                      else f"..{r.upper}") + f"  ({r.origin})"
             for r in rows]
    _emit(payload, args.format, lines)
    return 0


def _campaign_config(args) -> sp.CampaignConfig:
    base: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, value = line.partition("=")
                base[key.strip()] = value.strip()
    for key, value in (("n", args.n), ("d", args.d), ("modulus", args.modulus),
                       ("trials", args.trials), ("master_seed", args.seed),
                       ("gb_step_cap", args.gb_step_cap)):
        if value is not None:
            base[key] = value
    if args.h is not None:
        base["h_range"] = args.h
    cfg = sp.CampaignConfig.from_mapping(base)
    cfg.validate()
    return cfg


def _cmd_verify(args) -> int:
    cfg = _campaign_config(args)
    runner = {
        "dimension": sp.verify_dimension_theorem,
        "multiplicity": sp.verify_multiplicity_lemma,
        "connect": sp.verify_connecting_lemma,
    }[args.campaign]
    report = runner(cfg, workers=args.workers)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.text_summary())
    if report.summary["fails"] > 0:
        return 1
    if report.summary["capped"] > 0:
        return 3
    return 0


def _cmd_project(args) -> int:
    X = _hypersurface(args)
    p = _parse_point(args.point, X.nvars)
    degree = sp.verify_projection_degree(X, p, args.h)
    expected = X.d - args.h
    payload = {
        "config": {"n": X.n, "d": X.d, "h": args.h, "modulus": args.modulus,
                   "point": list(p)},
        "results": {"fiber_degree": degree, "expected": expected},
        "summary": {"matches_expected": degree == expected},
    }
    _emit(payload, args.format,
          [f"projection fiber degree = {degree} (expected {expected})"])
    return 0 if degree == expected else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactcones",
        description="Cones of high-contact lines on hypersurfaces over prime "
                    "fields: construction, verification campaigns, bound tables.")
    sub = parser.add_subparsers(dest="command", required=True)
    default_q = _default_modulus()

    def add_common(p, fmt_default="text"):
        p.add_argument("--modulus", type=int, default=default_q,
                       help=f"prime field size (default {default_q}, "
                            f"override via {_MODULUS_ENV})")
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default=fmt_default)

    def add_poly(p):
        p.add_argument("--poly", required=True,
                       help="homogeneous polynomial in x0..x{n+1}")
        p.add_argument("--n", type=int, required=True,
                       help="dimension of the hypersurface")

    p_cone = sub.add_parser("cone", help="contact-cone generators and dimension")
    add_poly(p_cone)
    p_cone.add_argument("--point", required=True)
    p_cone.add_argument("--h", type=int, required=True)
    p_cone.add_argument("--gb-step-cap", type=int, default=DEFAULT_STEP_CAP)
    add_common(p_cone)

    p_dim = sub.add_parser("dim", help="cone dimensions over an h range")
    add_poly(p_dim)
    p_dim.add_argument("--point", required=True)
    p_dim.add_argument("--h", type=_parse_h_range, required=True,
                       metavar="LO..HI")
    p_dim.add_argument("--gb-step-cap", type=int, default=DEFAULT_STEP_CAP)
    add_common(p_dim)

    p_contact = sub.add_parser("contact", help="contact order of a line")
    add_poly(p_contact)
    p_contact.add_argument("--point", required=True)
    p_contact.add_argument("--direction", required=True)
    add_common(p_contact)

    p_polar = sub.add_parser("polar", help="polar forms and membership")
    add_poly(p_polar)
    p_polar.add_argument("--pole", required=True)
    p_polar.add_argument("--s", type=int, default=None)
    p_polar.add_argument("--h", type=int, default=None)
    p_polar.add_argument("--point", default=None)
    add_common(p_polar)

    p_conn = sub.add_parser("connect", help="connecting-vertex locus and witness")
    add_poly(p_conn)
    p_conn.add_argument("--q1", required=True)
    p_conn.add_argument("--q2", required=True)
    p_conn.add_argument("--h", type=int, required=True)
    p_conn.add_argument("--seed", type=int, default=0)
    add_common(p_conn)

    p_bounds = sub.add_parser("bounds", help="closed-form bound report")
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--d", type=int, required=True)
    p_bounds.add_argument("--permissive", action="store_true")
    add_common(p_bounds)

    p_table = sub.add_parser("table", help="connecting-gonality offset table")
    p_table.add_argument("--n-min", type=int, default=1)
    p_table.add_argument("--n-max", type=int, default=16)
    add_common(p_table, fmt_default="csv")

    p_verify = sub.add_parser("verify", help="randomized campaigns")
    p_verify.add_argument("campaign",
                          choices=("dimension", "multiplicity", "connect"))
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--d", type=int)
    p_verify.add_argument("--h", type=_parse_h_range, metavar="LO..HI")
    p_verify.add_argument("--trials", type=int)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--gb-step-cap", type=int, default=None)
    p_verify.add_argument("--config", default=None,
                          help="key=value file supplying campaign fields")
    p_verify.add_argument("--modulus", type=int, default=default_q)
    p_verify.add_argument("--format", choices=("json", "text"), default="json")

    p_proj = sub.add_parser("project", help="projection degree on a curve cone")
    add_poly(p_proj)
    p_proj.add_argument("--point", required=True)
    p_proj.add_argument("--h", type=int, required=True)
    add_common(p_proj)

    return parser


_HANDLERS = {
    "cone": _cmd_cone, "dim": _cmd_dim, "contact": _cmd_contact,
    "polar": _cmd_polar, "connect": _cmd_connect, "bounds": _cmd_bounds,
    "table": _cmd_table, "verify": _cmd_verify, "project": _cmd_project,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep both
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
