"""``varcal`` command line.

Exit codes: 0 success, 2 parse error, 3 solver failure, 4 infeasible input.

    varcal el --lagrangian "12*x*y - yp^2"
    varcal extremal --lagrangian "12*x*y - yp^2" --x0 -1 --y0 1 --x1 0 --y1 0 --csv cubic.csv
    varcal brach solve --x0 0 --y0 2 --x1 3 --y1 1 --svg cycloid.svg
    varcal brach compare --x0 0 --y0 2 --x1 3 --y1 1 \\
        --curve "line:-x/3 + 2" --curve "arc:6 - sqrt(16 - x^2 + 6*x)"
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import artifacts
from .brach import (
    G, CurveError, CurveSamples, Endpoints, InfeasibleEndpoints, descent_time, min_time,
    sample_curve, sample_cycloid, solve_constants,
)
from .expr import ExprError, ParseError, compile_expr, parse, to_string
from .numerics import IntegrationError, QuadratureError, RootError, ShootingError, shoot
from .varcalc import (
    DegenerateLagrangianError, Lagrangian, accel_form, accel_function, euler_lagrange,
    verify_extremal,
)

EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_INFEASIBLE = 0, 2, 3, 4
MIN_RK4_STEPS = 1000


class CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


def _num(v: float) -> str:
    return f"{v:#.10g}"


def _params(items: Sequence[str] | None) -> dict[str, float]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"--param expects name=value, got {item!r}", EXIT_PARSE)
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise CliError(f"--param value is not a number: {item!r}", EXIT_PARSE) from None
    return out


def _parse(text: str, what: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise CliError(f"{what}: syntax error: {exc}", EXIT_PARSE) from None


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# ---------------------------------------------------------------------------
# el


def cmd_el(args) -> int:
    expr = _parse(args.lagrangian, "lagrangian")
    try:
        L = Lagrangian(expr)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    r = euler_lagrange(L)
    integrals = [{"kind": fi.kind.value, "phi": to_string(fi.phi)} for fi in r.first_integrals]
    report = {
        "lagrangian": to_string(L.expr),
        "residual": to_string(r.residual),
        "accel": None if r.accel is None else to_string(r.accel),
        "degenerate": r.accel is None,
        "first_integrals": integrals,
    }
    lines = [f"Lagrangian:      {report['lagrangian']}",
             f"Euler-Lagrange:  {report['residual']} = 0"]
    if r.accel is None:
        lines.append("acceleration:    none (degenerate Lagrangian: d2L/dyp2 is identically zero)")
    else:
        lines.append(f"acceleration:    ypp = {report['accel']}")
    if integrals:
        for fi in integrals:
            lines.append(f"{fi['kind']} integral: {fi['phi']} = const")
    else:
        lines.append("first integrals: none (L depends explicitly on x and y)")
    _emit(args, report, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# extremal


def cmd_extremal(args) -> int:
    expr = _parse(args.lagrangian, "lagrangian")
    params = _params(args.param)
    try:
        L = Lagrangian(expr)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    if not args.x1 > args.x0:
        raise CliError("x1 must exceed x0", EXIT_INFEASIBLE)
    r = euler_lagrange(L)
    try:
        accel = accel_form(r)
    except DegenerateLagrangianError as exc:
        raise CliError(str(exc), EXIT_INFEASIBLE) from None
    missing = L.parameters - set(params)
    if missing:
        raise CliError(f"unbound parameter(s): {', '.join(sorted(missing))} (use --param)",
                       EXIT_PARSE)
    f = accel_function(accel, params)

    samples = args.samples
    stride = max(1, math.ceil(MIN_RK4_STEPS / samples))
    try:
        slope, traj = shoot(f, args.x0, args.y0, args.x1, args.y1, args.slope_lo,
                            args.slope_hi, args.tol, samples * stride)
    except (ShootingError, IntegrationError) as exc:
        raise CliError(f"shooting failed: {exc}", EXIT_SOLVER) from None

    # residual along the numeric trajectory, ypp by central differences
    res = compile_expr(r.residual, "x", "y", "yp", "ypp", params=params)
    ypp = np.gradient(traj.yp, traj.x, edge_order=2)
    resid = [abs(res(float(x), float(y), float(p), float(q)))
             for x, y, p, q in zip(traj.x, traj.y, traj.yp, ypp)]
    miss = float(traj.y[-1]) - args.y1

    report = {
        "residual": to_string(r.residual),
        "accel": to_string(accel),
        "slope": slope,
        "endpoint_miss": miss,
        "steps": samples * stride,
        "max_fd_residual": max(resid),
    }
    lines = [f"acceleration:   ypp = {report['accel']}",
             f"initial slope:  {_num(slope)}",
             f"endpoint miss:  {_num(miss)}",
             f"max |residual| along trajectory (finite-difference ypp): {_num(max(resid))}"]

    if args.exact:
        exact = _parse(args.exact, "exact")
        ex = compile_expr(exact, "x", params=params)
        dev = max(abs(float(y) - ex(float(x))) for x, y in zip(traj.x, traj.y))
        check = verify_extremal(L, exact, args.x0, args.x1, 101, params)
        report["max_deviation_from_exact"] = dev
        report["exact_max_abs_residual"] = check.max_abs_residual
        lines.append(f"max |y - exact|: {_num(dev)}")
        lines.append(f"exact curve max |residual|: {_num(check.max_abs_residual)} "
                     f"(worst at x = {_num(check.worst_x)})")

    curve = CurveSamples(traj.x[::stride].copy(), traj.y[::stride].copy(), "extremal")
    _write_outputs(args, [curve], combined=False)
    _emit(args, report, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# brach


def _endpoints(args) -> Endpoints:
    try:
        return Endpoints(args.x0, args.y0, args.x1, args.y1)
    except InfeasibleEndpoints as exc:
        raise CliError(f"infeasible endpoints: {exc}", EXIT_INFEASIBLE) from None


def _solve(args):
    if not args.g > 0:
        raise CliError("g must be positive", EXIT_INFEASIBLE)
    e = _endpoints(args)
    try:
        s = solve_constants(e)
    except RootError as exc:
        raise CliError(f"constant solver failed: {exc}", EXIT_SOLVER) from None
    return e, s


def _write_outputs(args, curves: list[CurveSamples], combined: bool) -> None:
    if args.csv:
        text = artifacts.combined_csv_text(curves) if combined else artifacts.csv_text(curves[0])
        artifacts.write_text(args.csv, text)
    if args.svg:
        artifacts.write_text(args.svg, artifacts.svg_text(curves))


def cmd_brach_solve(args) -> int:
    e, s = _solve(args)
    T = min_time(s, args.g)
    report = {"x0": e.x0, "y0": e.y0, "x1": e.x1, "y1": e.y1, "g": args.g,
              "a": s.a, "theta1": s.theta1, "time": T}
    lines = [f"a      = {_num(s.a)}", f"theta1 = {_num(s.theta1)}", f"T      = {_num(T)}"]
    _write_outputs(args, [sample_cycloid(s, args.samples)], combined=False)
    _emit(args, report, lines)
    return EXIT_OK


def _curve_arg(text: str) -> tuple[str, str]:
    label, sep, expr = text.partition(":")
    if sep and label.strip() and expr.strip():
        return label.strip(), expr.strip()
    return text.strip(), text.strip()


def cmd_brach_compare(args) -> int:
    e, s = _solve(args)
    T = min_time(s, args.g)
    rows = [{"label": "cycloid", "curve": None, "time": T, "error": None}]
    curves = [sample_cycloid(s, args.samples)]
    for item in args.curve or ():
        label, text = _curve_arg(item)
        row = {"label": label, "curve": text, "time": None, "error": None}
        rows.append(row)
        try:
            expr = parse(text)
            row["time"] = descent_time(expr, e.x0, e.x1, e.y0, args.g)
            curves.append(sample_curve(expr, e.x0, e.x1, args.samples, label))
        except ParseError as exc:
            row["error"] = f"syntax error: {exc}"
        except (CurveError, QuadratureError, ExprError, ArithmeticError) as exc:
            row["error"] = str(exc)

    warnings = []
    beaten = [r["label"] for r in rows[1:] if r["time"] is not None and r["time"] < T]
    if beaten:
        warnings.append("cycloid is not the fastest; faster: " + ", ".join(beaten))
    report = {"x0": e.x0, "y0": e.y0, "x1": e.x1, "y1": e.y1, "g": args.g,
              "a": s.a, "theta1": s.theta1, "rows": rows, "warnings": warnings}

    width = max(len(r["label"]) for r in rows)
    lines = [f"{'curve'.ljust(width)}  time"]
    for r in rows:
        value = _num(r["time"]) if r["error"] is None else f"error: {r['error']}"
        lines.append(f"{r['label'].ljust(width)}  {value}")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write_outputs(args, curves, combined=True)
    _emit(args, report, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, csv: bool = True) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    if csv:
        p.add_argument("--samples", type=int, default=200, help="plot/CSV intervals (default 200)")
        p.add_argument("--csv", help="write sampled points to this CSV file")
        p.add_argument("--svg", help="write an SVG plot to this file")


def _endpoint_flags(p: argparse.ArgumentParser) -> None:
    for name in ("x0", "y0", "x1", "y1"):
        p.add_argument(f"--{name}", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varcal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("el", help="derive the Euler-Lagrange equation and first integrals")
    p.add_argument("--lagrangian", required=True, help="L in x, y, yp (y' accepted)")
    _common(p, csv=False)
    p.set_defaults(func=cmd_el)

    p = sub.add_parser("extremal", help="solve the boundary-value problem by shooting")
    p.add_argument("--lagrangian", required=True)
    _endpoint_flags(p)
    p.add_argument("--slope-lo", type=float, default=-10.0)
    p.add_argument("--slope-hi", type=float, default=10.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--exact", help="known solution y(x) to compare against")
    _common(p)
    p.set_defaults(func=cmd_extremal)

    brach = sub.add_parser("brach", help="brachistochrone")
    bsub = brach.add_subparsers(dest="brach_command", required=True)
    for name, func, helptext in (
        ("solve", cmd_brach_solve, "cycloid constants and minimal time"),
        ("compare", cmd_brach_compare, "descent times along several curves"),
    ):
        p = bsub.add_parser(name, help=helptext)
        _endpoint_flags(p)
        p.add_argument("--g", type=float, default=G)
        if name == "compare":
            p.add_argument("--curve", action="append",
                           help="y(x), optionally 'label:expr'; repeatable")
        _common(p)
        p.set_defaults(func=func)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        print("varcal: --samples must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"varcal: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
