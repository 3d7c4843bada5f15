"""Command-line front-end: JSON on stdout, summaries on stderr.

Exit codes: 0 success, 1 a verification came back false, 2 malformed
input, 3 precondition violation, 70 internal error.
"""

import argparse
import json
import sys
import traceback
from fractions import Fraction

from .errors import ParseError, PreconditionError, SchemaError
from .membership import solve_y_equation
from .reduction import PlanePoint, PolyPair, reduce_full
from .structure import (
    decompose,
    explore_constant_jacobian,
    intersection_data,
    verify_intersection_count,
)
from .textio import parse_poly, print_poly, to_json


def _build_parser():
    top = argparse.ArgumentParser(
        prog="planecross",
        description="Exact workbench for plane polynomial pairs: normalize to "
        "the reduction conditions, solve the bounded cofactor equation, check "
        "the count identity, and factor through normal crossings.",
    )
    top.add_argument("--verbose", action="store_true", help="summaries on stderr")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="canonicalize one polynomial expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--ring", default="x,y", help="comma-separated variable names")

    def pair_args(q):
        q.add_argument("--f1", required=True)
        q.add_argument("--f2", required=True)

    q = sub.add_parser("intersect", help="intersection points on y = 0")
    pair_args(q)
    q.add_argument("--report-dir", help="also write PNG and CSV here")

    q = sub.add_parser("reduce", help="normalize a pair to the reduction conditions")
    pair_args(q)
    q.add_argument("--points", help="JSON list of [x, y] rational points")

    q = sub.add_parser("solve", help="bounded cofactors for y times the Jacobian")
    pair_args(q)

    q = sub.add_parser("verify-thm1", help="x^(n-1) coefficient of g2 vs the oracle")
    pair_args(q)

    q = sub.add_parser("decompose", help="normal-crossing matrix factorization")
    pair_args(q)

    q = sub.add_parser("explore", help="sweep factored pairs for constant Jacobians")
    q.add_argument("--max-deg-r", type=int, required=True)
    q.add_argument("--coeff-bound", type=int, required=True)
    q.add_argument("--budget", type=int, default=None)
    q.add_argument("--max-deg-hk", type=int, default=1)
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--report-dir", help="also write PNG and CSV here")
    return top


def _parse_points(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"points are not JSON: {e.msg}", "") from None
    if not isinstance(raw, list):
        raise SchemaError("points must be a JSON array", "")
    points = []
    for i, entry in enumerate(raw):
        if not (isinstance(entry, list) and len(entry) == 2):
            raise SchemaError("each point must be a [x, y] pair", f"/{i}")
        coords = []
        for j, v in enumerate(entry):
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise SchemaError("coordinates are rational strings", f"/{i}/{j}")
            try:
                coords.append(Fraction(str(v)))
            except (ValueError, ZeroDivisionError) as e:
                raise SchemaError(str(e), f"/{i}/{j}") from None
        points.append(PlanePoint(*coords))
    return points


def _pair(args):
    return PolyPair(parse_poly(args.f1), parse_poly(args.f2))


def _dispatch(args):
    """Run one command; (document, verification_failed, stderr summary)."""
    if args.command == "parse":
        ring = tuple(v.strip() for v in args.ring.split(",") if v.strip())
        f = parse_poly(args.expr, ring)
        return to_json(f), False, f"parsed to {print_poly(f)}"
    if args.command == "intersect":
        pair = _pair(args)
        data = intersection_data(pair)
        summary = f"{data.total} intersection(s) at x in {[str(a) for a in data.x_roots]}"
        if args.report_dir:
            from .viz import save_intersection_report

            paths = save_intersection_report(pair, data, args.report_dir)
            summary += "; wrote " + ", ".join(paths)
        return to_json(data), False, summary
    if args.command == "reduce":
        pair = _pair(args)
        points = _parse_points(args.points) if args.points else None
        report = reduce_full(pair, points)
        ok = (
            report.jacobian_preserved
            and report.intersection_number_before == report.intersection_number_after
        )
        summary = (
            f"{len(report.chain.steps)} step(s); intersection number "
            f"{report.intersection_number_after}; multiplier "
            f"{report.chain.jacobian_multiplier}"
        )
        return to_json(report), not ok, summary
    if args.command == "solve":
        sol = solve_y_equation(_pair(args))
        summary = f"g1 = {print_poly(sol.g1)}; g2 = {print_poly(sol.g2)}"
        return to_json(sol), False, summary
    if args.command == "verify-thm1":
        report = verify_intersection_count(_pair(args))
        summary = (
            f"coefficient {report.g2_top_coeff} vs oracle {report.oracle_total}: "
            + ("agree" if report.agree else "DISAGREE")
        )
        return to_json(report), not report.agree, summary
    if args.command == "decompose":
        dec = decompose(_pair(args))
        summary = "all identities hold" if dec.all_ok else "an identity FAILED"
        return to_json(dec), not dec.all_ok, summary
    report = explore_constant_jacobian(
        args.max_deg_r,
        args.coeff_bound,
        budget=args.budget,
        max_deg_hk=args.max_deg_hk,
        seed=args.seed,
    )
    summary = (
        f"{report.candidates_examined} candidates, "
        f"{len(report.counterexamples)} counterexample(s)"
        + ("; truncated" if report.truncated else "")
    )
    if args.report_dir:
        from .viz import save_exploration_report

        paths = save_exploration_report(report, args.report_dir)
        summary += "; wrote " + ", ".join(paths)
    return to_json(report), bool(report.counterexamples), summary


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        doc, failed, summary = _dispatch(args)
    except (ParseError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except Exception:
        print("internal error:", file=sys.stderr)
        traceback.print_exc()
        return 70
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.verbose:
        print(summary, file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
