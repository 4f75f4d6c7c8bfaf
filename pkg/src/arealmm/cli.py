"""Command-line front end: closed forms, numerical estimates, verification.

Subcommands::

    arealmm closed <case-or-expression> [--m M --n N --h H --s S --form F]
    arealmm estimate <expression> [--method mc|quad] [--zeta-s S] [--inner-var y]
    arealmm verify [--suite fast|full] [--output text|json|csv] [--plots DIR]

Global flags (valid on every subcommand): --json, --seed, --samples,
--tolerance.  ``verify`` exits nonzero iff any record fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import closedforms
from .closedforms import ClosedFormResult, closed_form_for_expression
from .core import ParseError, SeriesControl
from .expr import parse, to_text, variables
from .montecarlo import mc_areal_mm, mc_zeta_mm
from .quadrature import QuadratureSettings, semi_analytic_mm
from .verification import (
    records_to_csv,
    records_to_json,
    records_to_text,
    run_suite,
)

REGISTERED_CASES = (
    "smyth-areal", "sqrt2-areal", "moebius-areal", "monomial-sum",
    "max-coords", "higher-coords", "higher-moebius", "zeta-x1",
)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object/array")
    common.add_argument("--seed", type=int, default=1, help="RNG seed (default 1)")
    common.add_argument("--samples", type=int, default=10 ** 6,
                        help="Monte Carlo sample count (default 1e6)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="tolerance override for series/quadrature")

    parser = argparse.ArgumentParser(
        prog="arealmm",
        description="closed forms and numerical estimators for areal Mahler measures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_closed = sub.add_parser("closed", parents=[common],
                              help="evaluate a registered closed form or expression")
    p_closed.add_argument("case", help="case name (%s) or an expression" %
                          ", ".join(REGISTERED_CASES))
    p_closed.add_argument("--m", type=int, help="first monomial length")
    p_closed.add_argument("--n", type=int, help="second monomial length / coordinate count")
    p_closed.add_argument("--h", type=str,
                          help="log power(s), comma separated for higher-coords")
    p_closed.add_argument("--s", type=float, help="zeta measure exponent")
    p_closed.add_argument("--form", choices=("gamma", "product"), default="gamma",
                          help="zeta-x1 evaluation route")

    p_est = sub.add_parser("estimate", parents=[common],
                           help="numerically estimate a measure")
    p_est.add_argument("expr", help="expression, e.g. '1+x+y'")
    p_est.add_argument("--method", choices=("mc", "quad"), default="mc")
    p_est.add_argument("--zeta-s", type=float, default=None,
                       help="estimate the zeta measure at this exponent instead")
    p_est.add_argument("--inner-var", default=None,
                       help="linear variable integrated exactly (quad method)")

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run the closed-form vs numeric verification suite")
    p_ver.add_argument("--suite", choices=("fast", "full"), default="fast")
    p_ver.add_argument("--output", choices=("text", "json", "csv"), default="text")
    p_ver.add_argument("--plots", metavar="DIR", default=None,
                       help="render report figures (and records.csv) into DIR")
    return parser


def _series_control(args) -> SeriesControl:
    if args.tolerance is not None:
        return SeriesControl(tol=args.tolerance)
    return SeriesControl()


def _result_payload(name: str, result: ClosedFormResult) -> dict:
    return {
        "case": name,
        "theorem": result.theorem,
        "value": result.value,
        "exact": str(result.exact) if result.exact is not None else None,
        "terms": {label: complex(v).real for label, v in result.terms.items()},
        "imag_residual": result.imag_residual,
        "classical": result.classical,
    }


def _print_result(name: str, result: ClosedFormResult, as_json: bool):
    if as_json:
        print(json.dumps(_result_payload(name, result), indent=2))
        return
    if result.exact is not None:
        print(f"{name} = {result.exact} (= {result.value!r})")
    else:
        print(f"{name} = {result.value!r}")
    for label, v in result.terms.items():
        print(f"  {label:24} = {complex(v).real!r}")
    if result.imag_residual:
        print(f"  {'imaginary residual':24} = {result.imag_residual!r}")
    if result.classical is not None:
        print(f"  {'classical counterpart':24} = {result.classical!r}")


def _parse_powers(text: str) -> list:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise SystemExit(f"error: --h expects integers, got {text!r}")


def cmd_closed(args) -> int:
    ctl = _series_control(args)
    name = args.case

    if name == "smyth-areal":
        result = closedforms.mm_smyth_areal(ctl)
    elif name == "sqrt2-areal":
        result = closedforms.mm_sqrt2_areal(ctl)
    elif name == "moebius-areal":
        result = closedforms.mm_moebius_areal(ctl)
    elif name == "monomial-sum":
        if args.m is None or args.n is None:
            raise SystemExit("error: monomial-sum requires --m and --n")
        exact = closedforms.mm_monomial_sum(args.m, args.n)
        result = ClosedFormResult(float(exact), {"binomial-sum": float(exact)},
                                  "monomial-sum", exact=exact)
    elif name == "max-coords":
        if args.n is None:
            raise SystemExit("error: max-coords requires --n")
        exact = closedforms.mm_max_coords(args.n)
        result = ClosedFormResult(float(exact), {"max": float(exact)},
                                  "max-coords", exact=exact)
    elif name == "higher-coords":
        if not args.h:
            raise SystemExit("error: higher-coords requires --h")
        exact = closedforms.mm_higher_coords(_parse_powers(args.h))
        result = ClosedFormResult(float(exact), {"moment-product": float(exact)},
                                  "higher-coords", exact=exact)
    elif name == "higher-moebius":
        if not args.h:
            raise SystemExit("error: higher-moebius requires --h")
        powers = _parse_powers(args.h)
        if len(powers) != 1:
            raise SystemExit("error: higher-moebius takes a single --h value")
        result = closedforms.mm_higher_moebius(powers[0], ctl)
    elif name == "zeta-x1":
        if args.s is None:
            raise SystemExit("error: zeta-x1 requires --s")
        value = closedforms.zeta_mm_x_plus_1(args.s, args.form, ctl)
        result = ClosedFormResult(value, {args.form: value}, "zeta-x1")
    else:
        try:
            expr = parse(name)
        except ParseError as exc:
            raise SystemExit(f"error: unknown case and unparseable expression: {exc}")
        try:
            result = closed_form_for_expression(expr, ctl)
        except ValueError as exc:
            raise SystemExit(f"error: {exc}")
        name = to_text(expr)
    _print_result(name, result, args.json)
    return 0


def cmd_estimate(args) -> int:
    try:
        expr = parse(args.expr)
    except ParseError as exc:
        raise SystemExit(f"error: {exc}")

    if args.method == "quad":
        settings = QuadratureSettings(tol=args.tolerance or 1e-8)
        inner = args.inner_var
        if inner is None:
            # default: try each variable as the linear one
            last_error = None
            for candidate in variables(expr):
                try:
                    value = semi_analytic_mm(expr, candidate, settings)
                    break
                except ValueError as exc:
                    last_error = exc
            else:
                raise SystemExit(f"error: {last_error}")
        else:
            try:
                value = semi_analytic_mm(expr, inner, settings)
            except ValueError as exc:
                raise SystemExit(f"error: {exc}")
        if args.json:
            print(json.dumps({"expression": to_text(expr), "method": "quad",
                              "value": value, "tolerance": settings.tol}, indent=2))
        else:
            print(f"{to_text(expr)} = {value!r} (quadrature, tol {settings.tol})")
        return 0

    if args.zeta_s is not None:
        est = mc_zeta_mm(expr, args.zeta_s, args.samples, args.seed)
        kind = f"zeta measure at s={args.zeta_s}"
    else:
        est = mc_areal_mm(expr, args.samples, args.seed)
        kind = "areal measure"
    if args.json:
        print(json.dumps({
            "expression": to_text(expr), "method": "mc", "kind": kind,
            "mean": est.mean, "stderr": est.stderr, "count": est.count,
            "seed": est.seed, "discarded": est.discarded,
        }, indent=2))
    else:
        print(f"{to_text(expr)} {kind}: {est.mean!r} +/- {est.stderr:.3e} "
              f"({est.count} samples, seed {est.seed}, {est.discarded} discarded)")
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed)
    output = args.output
    if args.json and output == "text":
        output = "json"
    if output == "json":
        print(records_to_json(report.records))
    elif output == "csv":
        print(records_to_csv(report.records), end="")
    else:
        print(records_to_text(report))
    if args.plots:
        from .plots import render_report

        for path in render_report(report, args.plots):
            print(f"wrote {path}", file=sys.stderr)
    return 1 if report.failed else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "closed":
        return cmd_closed(args)
    if args.command == "estimate":
        return cmd_estimate(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
