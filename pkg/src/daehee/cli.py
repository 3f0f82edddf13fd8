"""Command-line driver: ``daehee table | series | verify``.

Exit status is 0 on success, 1 when an identity fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional, Sequence

from .families import Family, FamilyId, TriangleKind, family_values, generating_series, triangle
from .identities import (
    IdentityName,
    VerifyConfig,
    reports_to_json,
    reports_to_markdown,
    run_all,
)
from .ring import MultiPoly, format_rational, parse_rational
from .series import SeriesError

DEFAULT_NMAX_LIMIT = 64

FAMILY_CHOICES = {f.value.replace("_", "-"): f for f in Family}
TRIANGLE_CHOICES = {k.value.replace("_", "-"): k for k in TriangleKind}


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nmax_limit() -> int:
    raw = os.environ.get("DAEHEE_NMAX_LIMIT", str(DEFAULT_NMAX_LIMIT))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DAEHEE_NMAX_LIMIT must be an integer, got {raw!r}") from None


def _add_common(p: argparse.ArgumentParser, n_max_default: Optional[int]) -> None:
    p.add_argument("--n-max", type=int, default=n_max_default, required=n_max_default is None)
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.add_argument("--output-path", "-o", default=None, help="write here instead of stdout")


def _add_substitution(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order-r", type=int, default=1, help="order r of the higher-* families")
    p.add_argument("--lambda-value", "--lambda", dest="lambda_value", type=_rational, default=None)
    p.add_argument("--x-value", "--x", dest="x_value", type=_rational, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daehee",
        description="Exact tables and identity checks for degenerate Bernoulli and Daehee families.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    table = sub.add_parser("table", help="values for n = 0..n_max, or a triangle")
    table.add_argument("--family", required=True, choices=[*FAMILY_CHOICES, *TRIANGLE_CHOICES])
    _add_common(table, None)
    _add_substitution(table)

    series = sub.add_parser("series", help="plain t^n coefficients of a generating function")
    series.add_argument("--family", required=True, choices=list(FAMILY_CHOICES))
    _add_common(series, None)
    _add_substitution(series)

    verify = sub.add_parser("verify", help="run the identity battery")
    _add_common(verify, 12)
    verify.add_argument("--r-max", type=int, default=4)
    verify.add_argument("--d-max", type=int, default=3)
    verify.add_argument("--k-set", type=int, nargs="+", default=[-1, 0, 1, 2, 3])
    verify.add_argument("--timing", action="store_true", help="include elapsed times")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--inject-fault", choices=[i.value for i in IdentityName],
                        default=None, help=argparse.SUPPRESS)
    return parser


def _check_bounds(args) -> None:
    if args.n_max < 0:
        raise UsageError("--n-max must be non-negative")
    limit = _nmax_limit()
    if args.n_max > limit:
        raise UsageError(f"--n-max {args.n_max} exceeds DAEHEE_NMAX_LIMIT={limit}")


def _substitute(p: MultiPoly, args, numeric: bool) -> MultiPoly:
    # csv needs numbers: an unset x falls back to x = 0 (the "numbers" of a family)
    x = args.x_value
    if x is None and numeric:
        x = 0
    p = p.evaluate(lam=args.lambda_value, x=x)
    if numeric and not p.is_constant():
        raise UsageError("csv output needs numeric values; pass --lambda-value for degenerate families")
    return p


def _cell(p: MultiPoly):
    """JSON cell: "p/q" for a constant, the term list otherwise."""
    return format_rational(p.constant_value()) if p.is_constant() else p.to_json()


def _family_id(args) -> FamilyId:
    try:
        return FamilyId(FAMILY_CHOICES[args.family], args.order_r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _csv_text(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _markdown(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _emit_values(values: List[MultiPoly], args, label: str) -> str:
    numeric = args.format == "csv"
    values = [_substitute(v, args, numeric) for v in values]
    if args.format == "json":
        return json.dumps([{"n": n, label: _cell(v)} for n, v in enumerate(values)]) + "\n"
    rows = [(str(n), str(v)) for n, v in enumerate(values)]
    if args.format == "csv":
        return _csv_text(("n", label), rows)
    return _markdown(("n", label), rows)


def _emit_triangle(kind: TriangleKind, args) -> str:
    numeric = args.format == "csv"
    tri = triangle(kind, args.n_max)
    rows = [[_substitute(v, args, numeric) for v in row] for row in tri.rows]
    if args.format == "json":
        return json.dumps([{"n": n, "row": [_cell(v) for v in row]} for n, row in enumerate(rows)]) + "\n"
    flat = [(str(n), str(k), str(v)) for n, row in enumerate(rows) for k, v in enumerate(row)]
    if args.format == "csv":
        return _csv_text(("n", "k", "value"), flat)
    return _markdown(("n", "k", "value"), flat)


def cmd_table(args) -> int:
    _check_bounds(args)
    if args.family in TRIANGLE_CHOICES:
        if args.order_r != 1:
            raise UsageError("triangles do not take --order-r")
        text = _emit_triangle(TRIANGLE_CHOICES[args.family], args)
    else:
        text = _emit_values(family_values(_family_id(args), args.n_max), args, "value")
    _write(text, args)
    return 0


def cmd_series(args) -> int:
    _check_bounds(args)
    f = generating_series(_family_id(args), args.n_max)
    if args.format == "json":
        f = f.map(lambda c: _substitute(c, args, numeric=False))
        text = json.dumps(f.to_json()) + "\n"
    else:
        text = _emit_values(list(f.coeffs), args, "coefficient")
    _write(text, args)
    return 0


def cmd_verify(args) -> int:
    _check_bounds(args)
    if args.r_max < 1 or args.d_max < 1:
        raise UsageError("--r-max and --d-max must be at least 1")
    if args.format == "csv":
        raise UsageError("verify supports --format json or markdown")
    config = VerifyConfig(
        n_max=args.n_max, r_max=args.r_max, d_max=args.d_max,
        k_set=tuple(args.k_set), inject_fault=args.inject_fault,
    )
    reports = run_all(config, workers=args.workers)
    if args.format == "json":
        text = json.dumps(reports_to_json(reports, timing=args.timing), indent=2) + "\n"
    else:
        text = reports_to_markdown(reports, timing=args.timing)
    _write(text, args)
    return 0 if all(r.passed for r in reports) else 1


def _write(text: str, args) -> None:
    if args.output_path:
        with open(args.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


COMMANDS = {"table": cmd_table, "series": cmd_series, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.subcommand](args)
    except (UsageError, SeriesError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
