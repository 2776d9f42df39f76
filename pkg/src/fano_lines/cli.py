"""Command-line front end: parse, dispatch, and report as JSON or a table.

Every subcommand accepts the shared configuration flags (--tol, --seed,
--budget, --threads, --format, --catalog) and prints its data to stdout;
messages go to stderr.  Exit codes: 0 success, 1 user error (bad flags,
parse errors, violated preconditions), 2 computational failure (budget
exhausted, numeric non-convergence).

JSON output carries a top-level ``"schema": "fano-lines/1"`` key, sorted
keys throughout, exact rationals as ``"num/den"`` strings, and floating
values as strings with 15 significant digits, so identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import warnings
from fractions import Fraction

from .bounds import bound_table
from .catalog import SURFACE_RING, CatalogError, catalog_entries, named_surface
from .covering import total_inflections
from .exact_poly import DEFAULT_BUDGET, BudgetExceeded, MultiPoly
from .parser import ParseError, format_poly, parse_poly
from .p1_geometry import BinaryForm, GroupTag
from .plucker_enum import count_lines, enumerate_lines
from .separable import (
    SeparableSurface,
    build_form,
    count_and_emit,
    count_real_lines,
)
from .skew import rams_family, skew_bounds, verify_skew_set

__all__ = ["main", "main_entry"]

SCHEMA = "fano-lines/1"

CURVE_RING = ("x", "y", "z")
BINARY_RING = ("x", "y")

EXIT_OK = 0
EXIT_USER = 1
EXIT_COMPUTE = 2


class _UserError(ValueError):
    """A precondition or input problem reported with exit code 1."""


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with user-error exit semantics (code 1, message on stderr)."""

    def error(self, message):
        raise _UserError(message)


# -- value formatting --------------------------------------------------------


def _fmt_float(value: float) -> str:
    out = f"{value:.15g}"
    return "0" if out == "-0" else out


def _fmt_scalar(value):
    """JSON-ready form: ints/bools stay native, everything else a string."""
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, complex):
        sign = "+" if value.imag >= 0 else "-"
        return f"{_fmt_float(value.real)}{sign}{_fmt_float(abs(value.imag))}j"
    return value


def _fmt_line(line) -> list:
    return [_fmt_scalar(entry) for entry in line.plucker]


def _fmt_point(point) -> list:
    return [_fmt_scalar(complex(entry)) for entry in point]


# -- output ------------------------------------------------------------------


def _emit_json(payload: dict) -> str:
    body = dict(payload)
    body["schema"] = SCHEMA
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def _table_rows(payload, prefix=""):
    rows = []
    for key in sorted(payload):
        value = payload[key]
        label = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_table_rows(value, prefix=f"{label}."))
        elif isinstance(value, list):
            if all(not isinstance(v, (list, dict)) for v in value):
                rows.append((label, " ".join(str(v) for v in value)))
            else:
                for i, item in enumerate(value):
                    inner = item if isinstance(item, dict) else {"value": item}
                    rows.extend(_table_rows(inner, prefix=f"{label}[{i}]."))
        else:
            rows.append((label, str(value)))
    return rows


def _emit_table(payload: dict) -> str:
    rows = _table_rows(payload)
    width = max((len(label) for label, _ in rows), default=0)
    return "\n".join(f"{label.ljust(width)}  {value}" for label, value in rows)


def _emit(payload: dict, fmt: str) -> None:
    text = _emit_json(payload) if fmt == "json" else _emit_table(payload)
    sys.stdout.write(text + "\n")


# -- input helpers -----------------------------------------------------------


def _parse_form(text: str, ring: tuple, option: str) -> MultiPoly:
    try:
        poly = parse_poly(text, ring)
    except ParseError as exc:
        raise _UserError(f"{option}: {exc}") from exc
    if poly.is_zero:
        raise _UserError(f"{option}: the zero polynomial is not a form")
    degree = int(poly.degree)
    if any(sum(exps) != degree for exps in poly.terms):
        raise _UserError(f"{option}: polynomial must be homogeneous")
    return poly


def _binary_coefficients(poly: MultiPoly) -> list:
    d = int(poly.degree)
    return [poly.terms.get((i, d - i), Fraction(0)) for i in range(d + 1)]


def _resolve_surface(text: str, catalog_path) -> MultiPoly:
    """A catalog name, a family reference, or a polynomial expression."""
    entries = catalog_entries(catalog_path)
    head = text.partition(":")[0]
    if text in entries or f"{head}:d" in entries:
        return named_surface(text, path=catalog_path)
    return _parse_form(text, SURFACE_RING, "--surface")


def _group_symbol(tag) -> str:
    return tag.symbol if tag is not None else None


# -- subcommand handlers -----------------------------------------------------


def _cmd_lines_separable(args, config) -> dict:
    phi = _parse_form(args.phi, BINARY_RING, "--phi")
    psi = _parse_form(args.psi, BINARY_RING, "--psi")
    surface = SeparableSurface(
        BinaryForm(_binary_coefficients(phi)),
        BinaryForm(_binary_coefficients(psi)),
    )
    report = count_and_emit(surface, tol=config.tol)
    payload = {
        "degree": surface.degree,
        "alpha": report.alpha,
        "grid": len(report.grid_lines),
        "ruling": report.alpha * surface.degree,
        "total": report.total,
        "group": _group_symbol(report.group),
        "real_count": report.real_count,
    }
    if args.real:
        captured = []
        with warnings.catch_warnings(record=True) as log:
            warnings.simplefilter("always")
            payload["real_closed_form"] = count_real_lines(
                surface, tol=config.tol
            )
            captured = [str(entry.message) for entry in log]
        if captured:
            payload["warnings"] = sorted(captured)
    if args.emit:
        payload["lines"] = [_fmt_line(line) for line in report.all_lines()]
    return payload


def _cmd_lines_plucker(args, config) -> dict:
    surface = _resolve_surface(args.surface, config.catalog)
    try:
        result = count_lines(
            surface,
            budget=config.budget,
            threads=config.threads,
            skip_smooth_check=args.skip_smooth_check,
        )
    except ValueError as exc:
        if "singular" in str(exc):
            raise _UserError(
                "surface is singular; line counts are only defined for "
                "smooth surfaces (pass --skip-smooth-check to force the "
                "computation)"
            ) from exc
        raise
    payload = {
        "total": result.total,
        "strata": {str(s.stratum): s.count for s in result.strata},
        "certified": result.certified,
        "smooth_checked": result.smooth_checked,
    }
    if args.emit:
        lines = enumerate_lines(surface, budget=config.budget, tol=config.tol)
        payload["lines"] = [_fmt_line(line) for line in lines]
    return payload


def _cmd_covering(args, config) -> dict:
    curve = _parse_form(args.curve, CURVE_RING, "--curve")
    report = total_inflections(curve, tol=config.tol)
    payload = {
        "degree": int(curve.degree),
        "beta": report.beta,
        "candidates": len(report.candidates),
        "undetermined": len(report.undetermined),
        "total_inflections": [
            _fmt_point(point) for point in report.total_inflections
        ],
        "line_count": len(report.lines),
    }
    if args.emit:
        payload["lines"] = [_fmt_line(line) for line in report.lines]
    return payload


def _cmd_skew_rams(args, config) -> dict:
    family = rams_family(args.d, tol=config.tol)
    verification = verify_skew_set(family.surface, family.lines, tol=config.tol)
    return {
        "degree": family.degree,
        "count": len(family),
        "claimed_size": family.claimed_size,
        "disjoint": verification.ok,
        "min_pairing": _fmt_scalar(verification.min_pairing),
        "bounds": {
            key: _fmt_scalar(value) if value is not None else None
            for key, value in skew_bounds(args.d).items()
        },
    }


def _cmd_bounds(args, config) -> dict:
    table = bound_table(args.d)
    return dataclasses.asdict(table)


def _cmd_construct(args, config) -> dict:
    try:
        tag = GroupTag.parse(args.group)
    except ValueError as exc:
        raise _UserError(str(exc)) from exc
    form = build_form(args.degree, tag, seed=config.seed)
    poly = MultiPoly(
        BINARY_RING,
        {
            (i, args.degree - i): c
            for i, c in enumerate(form.coefficients)
            if c
        },
    )
    return {
        "degree": args.degree,
        "group": tag.symbol,
        "coefficients": [_fmt_scalar(c) for c in form.coefficients],
        "expression": format_poly(poly),
    }


def _cmd_catalog(args, config) -> dict:
    return {"surfaces": dict(catalog_entries(config.catalog))}


# -- configuration and dispatch ----------------------------------------------


@dataclasses.dataclass(frozen=True)
class _RunConfig:
    tol: float
    seed: int
    budget: int
    threads: int | None
    fmt: str
    catalog: str | None


def _config_from(args) -> _RunConfig:
    if not 0 < args.tol < 1e-2:
        raise _UserError("--tol must lie strictly between 0 and 1e-2")
    if args.budget <= 0:
        raise _UserError("--budget must be positive")
    threads = args.threads
    if threads is None:
        env = os.environ.get("FANO_LINES_THREADS")
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise _UserError(
                    f"FANO_LINES_THREADS must be an integer, got {env!r}"
                ) from None
    if threads is not None and threads < 1:
        raise _UserError("--threads must be at least 1")
    return _RunConfig(
        tol=args.tol,
        seed=args.seed,
        budget=args.budget,
        threads=threads,
        fmt=args.format,
        catalog=args.catalog,
    )


def _build_parser() -> _ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument(
        "--tol", type=float, default=1e-8,
        help="numeric tolerance, in (0, 1e-2) (default 1e-8)",
    )
    common.add_argument(
        "--seed", type=int, default=0,
        help="seed for any randomized choices (default 0)",
    )
    common.add_argument(
        "--budget", type=int, default=DEFAULT_BUDGET,
        help="cap on exact pair reductions (default 10^6)",
    )
    common.add_argument(
        "--threads", type=int, default=None,
        help="worker threads (default: FANO_LINES_THREADS or per-task choice)",
    )
    common.add_argument(
        "--format", choices=("json", "table"), default="json",
        help="output format (default json)",
    )
    common.add_argument(
        "--catalog", default=None, metavar="PATH",
        help="alternative named-surface catalog file",
    )

    parser = _ArgumentParser(
        prog="fano-lines",
        description="Count, enumerate, and verify lines on smooth surfaces "
        "in projective 3-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lines = sub.add_parser("lines", help="count lines on a surface")
    lines_sub = lines.add_subparsers(dest="method", required=True)

    separable = lines_sub.add_parser(
        "separable", parents=[common],
        help="surfaces phi(x,y) - psi(z,t): root-pairing count and emission",
    )
    separable.add_argument("--phi", required=True, help="binary form in x, y")
    separable.add_argument("--psi", required=True, help="binary form in z, t "
                           "(written in the variables x, y)")
    separable.add_argument("--real", action="store_true",
                           help="also report the closed-form real-line count")
    separable.add_argument("--emit", action="store_true",
                           help="include the Pluecker coordinates of every line")
    separable.set_defaults(handler=_cmd_lines_separable)

    plucker = lines_sub.add_parser(
        "plucker", parents=[common],
        help="any smooth surface: exact per-stratum counts",
    )
    plucker.add_argument("--surface", required=True,
                         help="catalog name (see 'catalog') or expression in "
                         "x, y, z, t")
    plucker.add_argument("--emit", action="store_true",
                         help="numerically extract and include every line")
    plucker.add_argument("--skip-smooth-check", action="store_true",
                         help="skip the smoothness precondition check")
    plucker.set_defaults(handler=_cmd_lines_plucker)

    covering = sub.add_parser(
        "covering", parents=[common],
        help="lines on the cyclic cover t^d = f(x,y,z) via total inflections",
    )
    covering.add_argument("--curve", required=True,
                          help="smooth plane curve f in x, y, z")
    covering.add_argument("--emit", action="store_true",
                          help="include the Pluecker coordinates of every line")
    covering.set_defaults(handler=_cmd_covering)

    skew = sub.add_parser("skew", help="pairwise disjoint line families")
    skew_sub = skew.add_subparsers(dest="family", required=True)
    rams = skew_sub.add_parser(
        "rams", parents=[common],
        help="the d(d-2)+4 disjoint lines on x^(d-1)y + xy^(d-1) + "
        "z^(d-1)t + zt^(d-1)",
    )
    rams.add_argument("--d", type=int, required=True,
                      help="degree (odd, at least 7)")
    rams.set_defaults(handler=_cmd_skew_rams)

    bounds = sub.add_parser(
        "bounds", parents=[common],
        help="closed-form line-count bounds at one degree",
    )
    bounds.add_argument("--d", type=int, required=True, help="degree (>= 3)")
    bounds.set_defaults(handler=_cmd_bounds)

    construct = sub.add_parser(
        "construct", parents=[common],
        help="binary form with a prescribed symmetry group",
    )
    construct.add_argument("--degree", type=int, required=True)
    construct.add_argument(
        "--group", required=True,
        help="trivial, cyclic:k, dihedral:k, T, O, or I",
    )
    construct.set_defaults(handler=_cmd_construct)

    catalog = sub.add_parser(
        "catalog", parents=[common], help="list the named surfaces"
    )
    catalog.set_defaults(handler=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from(args)
        payload = args.handler(args, config)
    except _UserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except (ParseError, CatalogError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except BudgetExceeded as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except RuntimeError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(payload, config.fmt)
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
