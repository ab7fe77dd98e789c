"""Command-line front end.

Exit status: 0 on success, 1 when a computation fails, 2 on usage errors.
Wherever a pair is expected, either a tableau file or a builtin name
(``table46``, ``dormand_prince``) is accepted.
"""
from __future__ import annotations

import argparse
import csv
import re
import sys
from pathlib import Path

import numpy as np

from . import tableau_io
from .errors import RkforgeError
from .tableau import (
    BUILTIN_NAMES,
    FamilyParams,
    builtin,
    construct_family,
    family_checks,
    interpolant_residual,
    verify_order,
)

RESIDUAL_LIMIT = 1e-9
# argparse only recognises plain negative decimals as values, not "-3/7" or "-1e-3"
_NEGATIVE_NUMBER = re.compile(r"^-(\d+/\d+|[\d.]+([eE][-+]?\d+)?)$")


class UsageError(Exception):
    pass


# --- argument helpers ---------------------------------------------------------


def _load_pair(spec: str):
    path = Path(spec)
    if path.is_file():
        return tableau_io.read(path)
    if spec.lower().replace("-", "_") in BUILTIN_NAMES or spec.lower() in ("dopri5", "dp5"):
        return builtin(spec)
    raise UsageError(f"no such pair file or builtin: {spec!r}")


def _check_pair_arg(spec: str) -> None:
    if not Path(spec).is_file() and spec.lower().replace("-", "_") not in BUILTIN_NAMES + ("dopri5", "dp5"):
        raise UsageError(f"no such pair file or builtin: {spec!r}")


def _check_out(path: str | None, is_dir: bool = False) -> None:
    if path is None:
        return
    p = Path(path)
    parent = p if is_dir else p.parent
    if is_dir:
        if p.exists() and not p.is_dir():
            raise UsageError(f"output directory {path!r} is a file")
        if not p.parent.exists():
            raise UsageError(f"parent of output directory {path!r} does not exist")
    elif not parent.exists():
        raise UsageError(f"output directory {str(parent)!r} does not exist")


def _parse_params(values: list[str]) -> FamilyParams:
    if len(values) == 1:
        p = Path(values[0])
        if not p.is_file():
            raise UsageError(f"params file {values[0]!r} not found")
        values = p.read_text().replace(",", " ").split()
        values = [v for v in values if not v.startswith("#")]
    if len(values) != 11:
        raise UsageError(f"expected 11 parameters, got {len(values)}")
    try:
        return FamilyParams.from_array([tableau_io._number(v, 0) for v in values])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_atols(text: str) -> np.ndarray:
    """``hi:lo:STEPdec`` (e.g. ``1e-3:1e-9:0.5dec``) or a comma list."""
    if ":" not in text:
        return np.array([float(v) for v in text.split(",")])
    parts = text.split(":")
    if len(parts) != 3 or not parts[2].endswith("dec"):
        raise UsageError(f"bad tolerance range {text!r}; use hi:lo:STEPdec")
    hi, lo, step = float(parts[0]), float(parts[1]), float(parts[2][:-3])
    if not (hi > lo > 0 and step > 0):
        raise UsageError(f"bad tolerance range {text!r}")
    n = int(round(np.log10(hi / lo) / step))
    return hi * 10.0 ** (-step * np.arange(n + 1))


def _parse_window(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}") from exc
    if len(vals) != 4:
        raise UsageError("window needs re0,re1,im0,im1")
    if not (vals[1] > vals[0] and vals[3] > vals[2]):
        raise UsageError(f"empty window {text!r}")
    return vals


def _weights(pair, which: str) -> np.ndarray:
    """``b`` or ``dK`` (b plus the K-th difference vector, 1-based)."""
    if which == "b":
        return pair.b
    if which.startswith("d") and which[1:].isdigit():
        k = int(which[1:])
        if not 1 <= k <= len(pair.d_basis):
            raise UsageError(f"pair has {len(pair.d_basis)} difference vectors")
        return pair.b + pair.d_basis[k - 1]
    raise UsageError(f"weights must be 'b' or 'dK', got {which!r}")


def _fmt(v: float) -> str:
    return f"{v:.5g}"


# --- subcommands --------------------------------------------------------------


def cmd_derive(args) -> int:
    params = _parse_params(args.params)
    _check_out(args.out)
    pair = construct_family(params, name=args.name)
    for line in verify_order(pair.tableau, pair.b, 5).lines():
        print(line)
    checks = family_checks(pair)
    for k, v in checks.items():
        print(f"{k:>10s}: {v:.3e}")
    print(f"difference vectors: {len(pair.d_basis)}; orders {pair.orders}")
    if args.out:
        tableau_io.write(pair, args.out)
    return 0 if max(checks.values()) <= RESIDUAL_LIMIT else 1


def cmd_verify(args) -> int:
    pair = _load_pair(args.pair)
    x = _weights(pair, args.weights)
    report = verify_order(pair.tableau, x, args.order)
    print("order,max_abs_tau,worst_tree")
    for p in sorted(report.max_by_order):
        print(f"{p},{report.max_by_order[p]:.17g},{report.worst_tree[p].bracket()}")
    return 0 if report.max_residual <= RESIDUAL_LIMIT else 1


def cmd_interp(args) -> int:
    pair = _load_pair(args.pair)
    if pair.interpolant is None:
        print("pair has no interpolant", file=sys.stderr)
        return 1
    thetas = np.linspace(0.0, 1.0, args.thetas)
    print("order,max_abs_tau")
    worst = 0.0
    for p in range(1, args.order + 1):
        r = interpolant_residual(pair, thetas, p)
        worst = max(worst, r)
        print(f"{p},{r:.17g}")
    return 0 if worst <= RESIDUAL_LIMIT else 1


def cmd_metrics(args) -> int:
    from .metrics import continuous_error_max, endpoint_error, max_abs_coefficient, variation

    pair = _load_pair(args.pair)
    x = _weights(pair, args.weights)
    rows = [(f"T{p}", endpoint_error(pair, x, p)) for p in (5, 6, 7)]
    if pair.interpolant is not None and args.weights == "b":
        rows.append(("max_T6_theta", continuous_error_max(pair, 6)[1]))
        V, N = variation(pair.interpolant)
        rows += [("V", V), ("N", N)]
    rows.append(("max_abs_a", max_abs_coefficient(pair.tableau)))
    for k, v in rows:
        print(f"{k:>13s}  {_fmt(v)}")
    return 0


def cmd_optimize(args) -> int:
    from .optimize import ObjectiveSpec, rationalize, search

    _check_out(args.out)
    _check_out(args.trace)
    res = search(ObjectiveSpec(args.objective), args.starts, args.budget, args.seed)
    print(f"status: {res.status}; evaluations: {res.n_evals}")
    if args.trace:
        res.write_trace(args.trace)
    if not res.ok:
        return 1
    pair = res.pair
    print(f"objective: {res.value:.6g}")
    print("params: " + " ".join(f"{v:.17g}" for v in res.params.as_array()))
    for k, v in res.report.items():
        print(f"{k:>13s}  {_fmt(v)}")
    if args.rationalize:
        rat = rationalize(res.params, args.rationalize, ObjectiveSpec(args.objective))
        print(f"rationalized (denominator <= {args.rationalize}): objective {rat.value_after:.6g}, "
              f"drift {rat.drift:.2%}")
        print("params: " + " ".join(str(getattr(rat.params, n)) for n in FamilyParams.names))
        pair = rat.pair
    if args.out:
        tableau_io.write(pair, args.out)
    return 0


def cmd_solve(args) -> int:
    from .integrate import SolveOptions, solve
    from .problems import endpoint_errors, problem

    pair = _load_pair(args.pair)
    prob = _problem(args.problem)
    _check_out(args.out)
    sol = solve(pair, prob.system, prob.t0, prob.x0, prob.t_end, SolveOptions(atol=args.atol, h0=args.h0))
    if args.out:
        sol.write_csv(args.out)
    err = float(np.max(endpoint_errors(sol, prob))) if sol.n_steps else float("nan")
    print(f"status: {sol.status} {sol.message}".rstrip())
    print(f"steps: {sol.n_steps}  rejections: {sol.n_rejected}  rhs_evals: {sol.nfev}  max_error: {err:.4e}")
    return 0 if sol.success else 1


def _problem(name: str):
    from .problems import problem

    try:
        return problem(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_stability(args) -> int:
    from .metrics import stability_polynomial, stability_region

    pair = _load_pair(args.pair)
    window = _parse_window(args.window)
    _check_out(args.out)
    if args.scale == "unit":
        scale = 1.0
    else:
        scale = float(pair.s - 1 if pair.u is not None else pair.s)
    poly = stability_polynomial(pair.tableau, _weights(pair, args.weights))
    lines = stability_region(poly, scale, window, args.resolution)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["curve", "re", "im"])
        for k, line in enumerate(lines):
            for z in line:
                w.writerow([k, repr(float(z.real)), repr(float(z.imag))])
    print(f"{len(lines)} boundary curve(s), scale {scale:g}")
    return 0


def cmd_dense(args) -> int:
    from .metrics import error_profile

    pair = _load_pair(args.pair)
    _check_out(args.out)
    if pair.interpolant is None:
        print("pair has no interpolant", file=sys.stderr)
        return 1
    p = int(args.curve[1:])
    thetas = np.linspace(0.0, 1.0, args.points)
    vals = error_profile(pair, p, thetas)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta", "value"])
        for th, v in zip(thetas, vals):
            w.writerow([repr(float(th)), repr(float(v))])
    print(f"max {args.curve.upper()}(theta) on grid: {_fmt(float(vals.max()))}")
    return 0


def cmd_bench(args) -> int:
    from .problems import work_precision

    pair_specs = [s for s in args.pairs.split(",") if s]
    for s in pair_specs:
        _check_pair_arg(s)
    probs = [_problem(n) for n in args.problems.split(",") if n]
    atols = parse_atols(args.atols)
    _check_out(args.out, is_dir=True)
    out = Path(args.out)
    out.mkdir(exist_ok=True)
    for spec in pair_specs:
        pair = _load_pair(spec)
        label = pair.name or Path(spec).stem
        for prob in probs:
            pts = work_precision(pair, prob, atols)
            path = out / f"{label}_{prob.name}.csv"
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["atol", "rhs_evals", "max_error", "rejections"])
                for pt in pts:
                    w.writerow([repr(pt.atol), pt.rhs_evals, repr(pt.max_error), pt.rejections])
            print(f"{path}: {len(pts)}/{len(atols)} points")
    return 0


def cmd_circle(args) -> int:
    from .problems import circle_test

    pair = _load_pair(args.pair)
    _check_out(args.out)
    res = circle_test(pair, args.h)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "index", "theta", "err_x", "err_y", "norm"])
        for k, (th, e) in enumerate(zip(res.thetas, res.curve_vector)):
            w.writerow(["tick", k + 1, repr(float(th)), repr(float(e[0])), repr(float(e[1])), repr(float(np.hypot(*e)))])
        exact = np.column_stack([np.cos(pair.c * res.h), np.sin(pair.c * res.h)])
        for i, (X, ex) in enumerate(zip(res.stages, exact)):
            e = X - ex
            w.writerow(["stage", i + 1, repr(float(pair.c[i])), repr(float(e[0])), repr(float(e[1])),
                        repr(float(res.stage_deviation[i]))])
    print(f"endpoint error: {res.endpoint_error:.4e}; max interior error: {res.curve_error.max():.4e}")
    return 0


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rkforge", description="Continuous (4,5) Runge-Kutta pairs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="build a pair from the 11 family parameters")
    p.add_argument("--params", nargs="+", required=True, help="11 numbers (decimal or p/q) or a file")
    p.add_argument("--out")
    p.add_argument("--name", default="")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="order-condition residuals of the weights")
    p.add_argument("--pair", required=True)
    p.add_argument("--order", type=int, default=5, choices=range(1, 8), metavar="P")
    p.add_argument("--weights", default="b", help="b or dK for b + d_K")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("interp", help="continuous order-condition residuals of the interpolant")
    p.add_argument("--pair", required=True)
    p.add_argument("--order", type=int, default=5, choices=range(1, 8), metavar="P")
    p.add_argument("--thetas", type=int, default=11)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("metrics", help="local-error norms, variation and coefficient size")
    p.add_argument("--pair", required=True)
    p.add_argument("--weights", default="b")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("optimize", help="search the family for an efficient pair")
    p.add_argument("--objective", choices=["a", "b", "A", "B"], required=True)
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--budget", type=int, default=2000, help="objective evaluations per start")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--trace", help="CSV of every objective evaluation")
    p.add_argument("--rationalize", type=int, metavar="D")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("solve", help="adaptive integration of a test problem")
    p.add_argument("--pair", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--atol", type=float, required=True)
    p.add_argument("--h0", type=float, default=1e-3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stability", help="boundary of the stability region")
    p.add_argument("--pair", required=True)
    p.add_argument("--scale", choices=["equal-cost", "unit"], default="equal-cost")
    p.add_argument("--window", default="-6,2,-5,5")
    p.add_argument("--resolution", type=int, default=401)
    p.add_argument("--weights", default="b")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("dense", help="local-error profile of the interpolant")
    p.add_argument("--pair", required=True)
    p.add_argument("--curve", choices=["t5", "t6", "t7"], default="t6")
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dense)

    p = sub.add_parser("bench", help="work-precision data")
    p.add_argument("--pairs", required=True, help="comma-separated pair files or builtins")
    p.add_argument("--problems", default="A3,D5,E2")
    p.add_argument("--atols", default="1e-3:1e-9:0.5dec")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("circle", help="one step on the rotation system")
    p.add_argument("--pair", required=True)
    p.add_argument("--h", type=float, default=np.pi / 2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_circle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    argv = [" " + a if _NEGATIVE_NUMBER.match(a) else a for a in argv]
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"rkforge: error: {exc}", file=sys.stderr)
        return 2
    except (RkforgeError, ValueError, RuntimeError, OSError) as exc:
        print(f"rkforge: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
