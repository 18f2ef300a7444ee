"""Command-line front end.

Subcommands: jones (colored Jones polynomials), habiro (cyclotomic
coefficients), loginv (center coefficient vectors with all-route
agreement deltas), qgroup-verify (representation-theory residual report),
volume-scan (the large-N asymptotics table).

Exit codes: 0 success, 2 configuration error, 3 feasibility refusal,
4 route disagreement beyond tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import mpmath as mp

from .qcalc import LaurentPoly, RootContext
from . import habiro, jones, loginv, qgroup, volume

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FEASIBILITY = 3
EXIT_DISAGREEMENT = 4


class ConfigError(ValueError):
    pass


def _default_precision() -> int:
    env = os.environ.get("LOGJONES_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"LOGJONES_PRECISION={env!r} is not an integer") from exc
    return 60


def _resolve_knot(args) -> jones.BraidWord:
    if getattr(args, "knot", None):
        if args.knot in jones.KNOT_CATALOG:
            return jones.KNOT_CATALOG[args.knot]
        raise ConfigError(f"unknown knot {args.knot!r}; use one of {sorted(jones.KNOT_CATALOG)}"
                          " or --braid")
    if getattr(args, "braid", None):
        try:
            return jones.parse_braid(args.braid)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError("one of --knot or --braid is required")


def _emit(text: str, out_path):
    if out_path and out_path != "-":
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cstr(z, digits):
    re_part = z.real if hasattr(z, "real") else z
    im_part = z.imag if hasattr(z, "imag") else mp.mpf(0)
    return {"re": mp.nstr(re_part, digits), "im": mp.nstr(im_part, digits)}


def _poly_json(p: LaurentPoly):
    return sorted((str(e), str(c)) for e, c in p.terms.items())


def cmd_jones(args) -> int:
    braid = _resolve_knot(args)
    colors = [args.m] if args.m else list(range(1, args.max_m + 1))
    payload = {"knot": braid.name or args.braid, "strands": braid.strands,
               "writhe": braid.writhe, "framing": 0, "values": {}}
    for m in colors:
        v = jones.colored_jones_zero_framed(braid, m)
        payload["values"][str(m)] = {"poly": str(v), "terms": _poly_json(v)}
    _emit(json.dumps(payload, sort_keys=True, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_habiro(args) -> int:
    if args.knot and args.knot in ("unknot", "3_1", "4_1"):
        h = habiro.catalog_coeffs(args.knot)
        unbounded = h.all_ones or h.tail_zero
        i_top = args.imax if args.imax is not None else (9 if unbounded else h.i_max)
        if not unbounded and i_top > h.i_max:
            i_top = h.i_max
        coeffs = [h.coeff(i) for i in range(i_top + 1)]
        payload = {"knot": args.knot, "all_ones": h.all_ones,
                   "coeffs": {str(i): {"poly": str(c), "terms": _poly_json(c)}
                              for i, c in enumerate(coeffs)}}
    else:
        braid = _resolve_knot(args)
        top = (args.imax if args.imax is not None else 5) + 1
        h = habiro.coeffs_for(braid, top)
        payload = {"knot": braid.name or args.braid, "all_ones": False,
                   "coeffs": {str(i): {"poly": str(c), "terms": _poly_json(c)}
                              for i, c in enumerate(h.coeffs)}}
    _emit(json.dumps(payload, sort_keys=True, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_loginv(args) -> int:
    if args.N is None:
        raise ConfigError("--N is required for loginv")
    ctx = RootContext(args.N, precision_digits=args.precision)
    braid = _resolve_knot(args)
    label = braid.name or args.braid
    knot = label if label in ("unknot", "3_1", "4_1") else braid
    rec = loginv.center_coeffs(knot, args.N, ctx, framing=args.framing, knot_label=label)
    # all-route gamma agreement deltas on the interior s range
    deltas = {}
    worst = mp.mpf(0)
    svals = [args.s] if args.s else list(range(1, args.N))
    with ctx.workprec():
        for s in svals:
            routes = loginv.gamma_all_routes(knot, s, args.N, ctx, framing=args.framing)
            vals = list(routes.values())
            delta = max(abs(a - b) for a in vals for b in vals)
            worst = max(worst, delta)
            deltas[str(s)] = mp.nstr(delta, 8)
    digits = args.precision
    payload = json.loads(rec.to_json(digits))
    payload["gamma_route_deltas"] = deltas
    payload["route_tolerance"] = mp.nstr(ctx.tol, 8)
    payload["routes_agree"] = bool(worst < ctx.tol)
    _emit(json.dumps(payload, sort_keys=True, indent=1) + "\n", args.out)
    if worst >= ctx.tol:
        print(f"ROUTE DISAGREEMENT: max gamma delta {mp.nstr(worst, 8)} exceeds "
              f"{mp.nstr(ctx.tol, 8)}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def cmd_qgroup_verify(args) -> int:
    if args.N is None:
        raise ConfigError("--N is required for qgroup-verify")
    ctx = RootContext(args.N, precision_digits=args.precision)
    rows = qgroup.verification_report(args.N, ctx, include_rmatrix=not args.skip_rmatrix)
    _emit(qgroup.report_to_json(rows) + "\n", args.out)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_DISAGREEMENT


def cmd_volume_scan(args) -> int:
    if args.N is None:
        raise ConfigError("--N is required for volume-scan")
    res = volume.asymptotic_scan(args.N)
    text = res.to_csv() if args.format == "csv" else res.to_json() + "\n"
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logjones",
        description="Logarithmic knot invariants from colored Jones invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, knotty=True):
        p.add_argument("--precision", type=int, default=None,
                       help="working precision in decimal digits (default 60, "
                            "or LOGJONES_PRECISION)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default="-", help="output path (default stdout)")
        if knotty:
            p.add_argument("--knot", help="catalog name: unknot, 3_1, 4_1")
            p.add_argument("--braid", help="braid word 'n: i1 i2 ...'")

    p = sub.add_parser("jones", help="exact 0-framed colored Jones polynomials")
    common(p)
    p.add_argument("--m", type=int, help="single color")
    p.add_argument("--max-m", type=int, default=4, help="colors 1..max-m when --m is absent")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("habiro", help="cyclotomic expansion coefficients")
    common(p)
    p.add_argument("--imax", type=int, help="highest coefficient index to print/extract")
    p.set_defaults(func=cmd_habiro)

    p = sub.add_parser("loginv", help="center coefficients with route agreement")
    common(p)
    p.add_argument("--N", type=int)
    p.add_argument("--s", type=int, help="restrict the route check to one s")
    p.add_argument("--framing", type=int, default=0)
    p.set_defaults(func=cmd_loginv)

    p = sub.add_parser("qgroup-verify", help="representation verification residual report")
    common(p, knotty=False)
    p.add_argument("--N", type=int)
    p.add_argument("--skip-rmatrix", action="store_true",
                   help="skip the all-pairs R-matrix specialization sweep")
    p.set_defaults(func=cmd_qgroup_verify)

    p = sub.add_parser("volume-scan", help="large-N scan of the figure-eight invariant")
    common(p, knotty=False)
    p.add_argument("--N", type=int)
    p.set_defaults(func=cmd_volume_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.precision is None:
            args.precision = _default_precision()
        if args.precision < 30:
            raise ConfigError("--precision must be at least 30")
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (jones.FeasibilityError, qgroup.FeasibilityError) as exc:
        print(f"feasibility refusal: {exc}", file=sys.stderr)
        return EXIT_FEASIBILITY
    except loginv.RouteDisagreement as exc:
        print(f"route disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except jones.LinkNotKnotError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
