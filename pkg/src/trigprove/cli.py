"""Command-line front end: prove, check, expand, series, root, report.

Exit codes for prove: 0 proved, 1 refuted, 2 gave up, 3 usage error.
check: 0 accepted, 1 rejected. All numerics print as exact rationals
unless --approx is given.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import certificate as certmod
from .driver import SearchConfig, prove
from .pipoly import PiPoly, PrecisionExhausted
from .positivity import (
    NoPositiveRoot,
    PositivityUndecided,
    least_positive_root,
)
from .multiangle import expand_poly
from .problems import ParseError, parse_function, parse_problem, print_problem
from .rationals import rat, rat_show
from .series import series_coeffs
from .unipoly import UniPoly

USAGE_ERROR = 3


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trigprove",
        description="Certified prover for mixed trigonometric polynomial inequalities",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_prove = sub.add_parser("prove", help="prove f > 0 on an interval")
    p_prove.add_argument("problem", help='e.g. "x - sin(x) > 0 on (0, pi/2)"')
    _common_flags(p_prove)

    p_check = sub.add_parser("check", help="re-verify a certificate file")
    p_check.add_argument("certificate", help="path to a certificate")

    p_expand = sub.add_parser("expand", help="print the multiple-angle form")
    p_expand.add_argument("expr")

    p_series = sub.add_parser("series", help="print Maclaurin coefficients")
    p_series.add_argument("expr")
    p_series.add_argument("--order", type=int, default=8)
    p_series.add_argument("--approx", action="store_true")

    p_root = sub.add_parser("root", help="enclose the least positive root")
    p_root.add_argument("expr", help="a polynomial in x (pi allowed)")
    p_root.add_argument("--width", default="1/100000")
    p_root.add_argument("--precision-bits", type=int, default=256)
    p_root.add_argument("--approx", action="store_true")

    p_report = sub.add_parser(
        "report", help="run the prover and render figures plus TSV diagnostics"
    )
    p_report.add_argument("problem")
    p_report.add_argument("--out-dir", default="report")
    _common_flags(p_report)
    return ap


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--interval", help='interval like "(0, pi/2)" if the problem text has none')
    p.add_argument("--out", help="write the certificate here (prove only)")
    p.add_argument("--k-max", type=int, default=16)
    p.add_argument("--split-depth", type=int, default=4)
    p.add_argument("--precision-bits", type=int, default=256)
    p.add_argument("--width", default="1/100000")
    p.add_argument("--approx", action="store_true")
    p.add_argument("--verbose", action="store_true")


def _assemble_problem_text(text: str, interval: str | None) -> str:
    if " on " in text or text.rstrip().endswith(")") and " on(" in text.replace(" ", ""):
        return text
    if interval is None:
        raise ParseError("no interval: add 'on (lo, hi)' or pass --interval", len(text))
    body = text if ">" in text else f"{text} > 0"
    return f"{body} on {interval}"


def _config(args) -> SearchConfig:
    return SearchConfig(
        k_max=args.k_max,
        split_depth_max=args.split_depth,
        precision_cap=args.precision_bits,
        width_target=rat(args.width),
    )


def _expr_to_unipoly(text: str) -> UniPoly:
    f = parse_function(text)
    out = UniPoly.of()
    for t in f.terms:
        if t.cos_pow or t.sin_pow:
            raise ParseError("root expects a trig-free polynomial in x", 0)
        out = out + t.factor
    return out


def _fmt_pipoly(c: PiPoly, approx: bool) -> str:
    if approx:
        import math

        return repr(sum(float(a) * math.pi**i for i, a in enumerate(c.coeffs)))
    return c.show()


def run(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0

    try:
        if args.command == "prove":
            return _cmd_prove(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "expand":
            print(expand_poly(parse_function(args.expr)).show())
            return 0
        if args.command == "series":
            return _cmd_series(args)
        if args.command == "root":
            return _cmd_root(args)
        if args.command == "report":
            return _cmd_report(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    raise AssertionError("unreachable")


def _cmd_prove(args) -> int:
    spec = parse_problem(_assemble_problem_text(args.problem, args.interval))
    outcome = prove(spec, _config(args))
    if args.verbose:
        for d in outcome.diagnostics:
            print(f"# {d}", file=sys.stderr)
    if outcome.verdict == "proved":
        print(f"proved: {print_problem(spec)}")
        assert outcome.certificate is not None
        if args.out:
            Path(args.out).write_bytes(outcome.certificate)
            print(f"certificate written to {args.out}")
        else:
            sys.stdout.write(outcome.certificate.decode("ascii") + "\n")
        return 0
    if outcome.verdict == "refuted":
        w = outcome.witness
        assert w is not None
        bound = rat_show(w.value_hi)
        rel = "<" if w.strict else "<="
        print(f"refuted: f({rat_show(w.point)}) {rel} {bound} {rel} 0"
              if w.strict else
              f"refuted: f({rat_show(w.point)}) = 0 exactly")
        return 1
    print("gave up: search caps exhausted without a verdict")
    if args.verbose:
        print("# rerun with a larger --k-max / --precision-bits", file=sys.stderr)
    return 2


def _cmd_check(args) -> int:
    data = Path(args.certificate).read_bytes()
    result = certmod.check(data)
    if result.accepted:
        print("accepted")
        return 0
    print(f"rejected: {result.reason}")
    return 1


def _cmd_series(args) -> int:
    f = parse_function(args.expr)
    coeffs = series_coeffs(f, args.order)
    for k, c in enumerate(coeffs):
        print(f"x^{k}: {_fmt_pipoly(c, args.approx)}")
    return 0


def _cmd_root(args) -> int:
    poly = _expr_to_unipoly(args.expr)
    try:
        res = least_positive_root(poly, rat(args.width), args.precision_bits)
    except (PositivityUndecided, PrecisionExhausted) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 2
    if isinstance(res, NoPositiveRoot):
        print(f"no positive root in (0, {rat_show(res.bound)}]")
        return 0
    if args.approx:
        print(f"least positive root in [{float(res.lo)!r}, {float(res.hi)!r}]")
    else:
        print(f"least positive root in [{rat_show(res.lo)}, {rat_show(res.hi)}]")
    return 0


def _cmd_report(args) -> int:
    from .report import render_report

    spec = parse_problem(_assemble_problem_text(args.problem, args.interval))
    outcome = prove(spec, _config(args))
    paths = render_report(spec, outcome, Path(args.out_dir))
    print(f"verdict: {outcome.verdict}")
    for name, path in paths.items():
        print(f"{name}: {path}")
    return {"proved": 0, "refuted": 1, "gave-up": 2}[outcome.verdict]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
