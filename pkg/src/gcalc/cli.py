"""Command-line front end.

Subcommands: ``eval`` an expression, render a ``difftable``, ``interp``olate
a table file, ``derive`` a geometric polynomial, print a geometric
factorial (``gfact``).  Exit codes: 0 success, 2 expression/value parse
errors, 3 domain errors, 4 table-file format errors.
"""

from __future__ import annotations

import argparse
import math
import sys

from .garith import (
    GCalcError,
    GNum,
    format_gnum,
    gfactorial,
    parse_gnum,
)
from .gderiv import GPolynomial, gderiv_nth
from .gdiff import (
    DuplicateNodes,
    GTable,
    TriangularTable,
    UniformGrid,
    UnsortedNodes,
    backward_table,
    divided_table,
    forward_table,
)
from .gexpr import FormatError, LexError, ParseError, evaluate, parse, read_table
from .ginterp import InterpReport, divided_report, lagrange_report, newton_forward_report

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_FORMAT = 4

_PARSE_ERRORS = (LexError, ParseError, ValueError)
_FORMAT_ERRORS = (FormatError, UnsortedNodes, DuplicateNodes)


def _approx_decimal(logval: float) -> str:
    """Scientific decimal approximation computed from the log, overflow-free."""
    d = logval / math.log(10.0)
    exp10 = math.floor(d)
    mantissa = 10.0 ** (d - exp10)
    if mantissa >= 10.0 - 5e-7:  # rounding at 5 decimals can carry over
        mantissa /= 10.0
        exp10 += 1
    return f"{mantissa:.5f}e{exp10:+d}"


def _fmt_value(x: GNum, precision: int, strip: bool = False) -> str:
    s = format_gnum(x, precision)
    if strip and "." in s and not s.startswith("e^"):
        s = s.rstrip("0").rstrip(".")
        if not s or s == "-":
            s = "0"
    return s


def _fmt_annotated(x: GNum, precision: int) -> str:
    s = format_gnum(x, precision)
    if s.startswith("e^"):
        return f"{s} (~ {_approx_decimal(x.logval)})"
    return s


def _print_span_error(err: GCalcError, source: str):
    print(f"error: {err}", file=sys.stderr)
    if err.span is not None:
        start, end = err.span
        # spans are byte offsets; for display clamp to the text length
        start = max(0, min(start, len(source)))
        end = max(start, min(end, len(source)))
        print(f"  {source}", file=sys.stderr)
        print("  " + " " * start + "^" * max(1, end - start), file=sys.stderr)


def _load_table(path: str) -> GTable:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return read_table(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def cmd_eval(args) -> int:
    try:
        node = parse(args.expr)
        value = evaluate(node)
    except _PARSE_ERRORS as err:
        if isinstance(err, GCalcError):
            _print_span_error(err, args.expr)
        else:
            print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except GCalcError as err:
        _print_span_error(err, args.expr)
        return EXIT_DOMAIN
    print(_fmt_annotated(value, args.precision))
    return EXIT_OK


def _staggered_lines(xs: list[str], tri: TriangularTable, precision: int) -> list[str]:
    """Lay the triangle out the desk way: order-k entries between rows."""
    npoints = len(tri.rows[0])
    height = max(1, 2 * npoints - 1)
    ncols = len(tri.rows) + 1
    cells = [["" for _ in range(ncols)] for _ in range(height)]
    for i, text in enumerate(xs):
        cells[2 * i][0] = text
    for k, row in enumerate(tri.rows):
        for i, entry in enumerate(row):
            cells[2 * i + k][k + 1] = _fmt_value(entry, precision, strip=True)
    widths = [max(len(line[c]) for line in cells) for c in range(ncols)]
    lines = []
    for line in cells:
        rendered = "  ".join(line[c].rjust(widths[c]) for c in range(ncols)).rstrip()
        lines.append(rendered)
    return lines


def cmd_difftable(args) -> int:
    try:
        table = _load_table(args.input)
    except _FORMAT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FORMAT
    try:
        if args.mode == "divided":
            tri = divided_table(table, args.order)
        else:
            grid = UniformGrid.from_table(table)
            build = forward_table if args.mode == "forward" else backward_table
            tri = build(grid, args.order)
    except GCalcError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "csv":
        print("order,index,value")
        for k, row in enumerate(tri.rows):
            for i, entry in enumerate(row):
                print(f"{k},{i},{format_gnum(entry)}")
    else:
        xs = ["e^" + f"{x.logval:g}" for x in table.xs]
        for line in _staggered_lines(xs, tri, args.precision):
            print(line)
    return EXIT_OK


def _interp_report(args, table: GTable) -> InterpReport:
    x = parse_gnum(args.at)
    if args.method == "divided":
        return divided_report(table, x)
    if args.method == "lagrange":
        return lagrange_report(table, x)
    return newton_forward_report(UniformGrid.from_table(table), x)


def cmd_interp(args) -> int:
    try:
        table = _load_table(args.input)
    except _FORMAT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FORMAT
    try:
        report = _interp_report(args, table)
    except _PARSE_ERRORS as err:
        print(f"error: bad --at value: {err}", file=sys.stderr)
        return EXIT_PARSE
    except GCalcError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    if report.extrapolated:
        print("warning: point lies outside the node range (extrapolating)", file=sys.stderr)
    if args.verbose:
        for i, term in enumerate(report.terms):
            line = f"term {i}: {_fmt_value(term, args.precision, strip=True)}"
            if report.weights is not None:
                line += f"  (weight log {report.weights[i]:.12g})"
            print(line)
    print(_fmt_value(report.value, args.precision, strip=True))
    return EXIT_OK


def cmd_derive(args) -> int:
    try:
        coeffs = tuple(parse_gnum(c.strip()) for c in args.poly.split(","))
        at = parse_gnum(args.at)
        poly = GPolynomial(coeffs)
    except (ValueError, GCalcError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.order == 0:
            value = poly.evaluate(at)
        else:
            value = gderiv_nth(poly, at, args.order)
    except GCalcError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    print(_fmt_annotated(value, args.precision))
    return EXIT_OK


def cmd_gfact(args) -> int:
    try:
        value = gfactorial(args.n)
    except (ValueError, GCalcError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    print(_fmt_annotated(value, args.precision))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcalc",
        description="Geometric arithmetic: evaluate expressions, difference tables, "
        "interpolation and differentiation on the positive reals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_precision(p):
        p.add_argument("--precision", type=int, default=6, help="decimals to print (default 6)")

    p_eval = sub.add_parser("eval", help="evaluate a geometric expression")
    p_eval.add_argument("expr", help="expression, e.g. 'e^2 .+ gfact(3)'")
    add_precision(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_diff = sub.add_parser("difftable", help="render a difference table from a file")
    p_diff.add_argument("--input", required=True, help="table file (header x,f)")
    p_diff.add_argument(
        "--mode",
        choices=("forward", "backward", "divided"),
        default="divided",
        help="difference operator (forward/backward need a uniform grid)",
    )
    p_diff.add_argument("--order", type=int, default=None, help="highest order to compute")
    p_diff.add_argument("--format", choices=("text", "csv"), default="text")
    add_precision(p_diff)
    p_diff.set_defaults(func=cmd_difftable)

    p_interp = sub.add_parser("interp", help="interpolate a table file at a point")
    p_interp.add_argument("--input", required=True, help="table file (header x,f)")
    p_interp.add_argument("--at", required=True, help="evaluation point (decimal or e^ literal)")
    p_interp.add_argument(
        "--method",
        choices=("divided", "lagrange", "newton-forward"),
        default="divided",
    )
    p_interp.add_argument("--verbose", action="store_true", help="print per-term contributions")
    add_precision(p_interp)
    p_interp.set_defaults(func=cmd_interp)

    p_derive = sub.add_parser("derive", help="differentiate a geometric polynomial")
    p_derive.add_argument(
        "--poly",
        required=True,
        help="comma-separated coefficients, leading first (e.g. 'e^1,1,1,1' for the monic cubic)",
    )
    p_derive.add_argument("--at", required=True, help="evaluation point (decimal or e^ literal)")
    p_derive.add_argument("--order", type=int, default=1, help="derivative order (default 1)")
    add_precision(p_derive)
    p_derive.set_defaults(func=cmd_derive)

    p_gfact = sub.add_parser("gfact", help="print a geometric factorial")
    p_gfact.add_argument("n", type=int)
    add_precision(p_gfact)
    p_gfact.set_defaults(func=cmd_gfact)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
