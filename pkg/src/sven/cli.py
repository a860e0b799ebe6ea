"""Command line front end: ``sven solve|path|bench|check``.

Exit codes: 0 success, 1 usage or input error, 2 solver failure,
3 equivalence check failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import nullcontext
from pathlib import Path

import numpy as np

from . import bench, check
from .cd import PenalizedSpec, cd_solve, lambda_max
from .dataset import load_dense_csv, load_libsvm, standardize
from .errors import DegenerateInputError, DimensionError, ParseError, SvenError
from .path import (
    cd_path,
    select_path_records,
    sven_path,
    write_pairs_csv,
    write_path_csv,
)
from .reduction import sven_solve
from .svm import SolverConfig

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _thread_limit():
    raw = os.environ.get("SVEN_THREADS")
    if not raw:
        return nullcontext()
    from threadpoolctl import threadpool_limits

    try:
        return threadpool_limits(limits=int(raw))
    except ValueError:
        raise UsageError(f"SVEN_THREADS must be an integer, got {raw!r}") from None


def _load(args):
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"no such file: {path}")
    if args.format == "csv":
        return load_dense_csv(path, has_header=args.header)
    return load_libsvm(path)


def _write_json(obj, path):
    text = json.dumps(obj, indent=2, allow_nan=False)
    if path is None or str(path) == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def cmd_solve(args):
    problem = _load(args)
    std, record = standardize(problem)
    X, y = std.X, std.y
    if args.t <= 0 or args.lambda2 < 0:
        raise UsageError("--t must be positive and --lambda2 nonnegative")
    if args.check_budget:
        # ridge (or near-unpenalized Lasso) L1 norm bounds the useful budgets
        lam1 = 0.0 if args.lambda2 > 0 else 1e-6 * lambda_max(X, y)
        ref = cd_solve(X, y, PenalizedSpec(lam1, args.lambda2))
        limit = float(np.abs(ref).sum())
        if args.t >= limit:
            _warn(f"t={args.t:g} is not below the unconstrained L1 norm {limit:.6g}; "
                  "the budget will not bind and the result is not the Elastic Net optimum")
    cfg = SolverConfig(tol=args.tol)
    sol = sven_solve(X, y, args.t, args.lambda2, cfg, route=args.solver)
    coef, intercept = record.coef_to_original(sol.beta)
    _write_json(
        {
            "beta": coef.tolist(),
            "beta_standardized": sol.beta.tolist(),
            "intercept": intercept,
            "t": sol.t,
            "lambda2": sol.lambda2,
            "route": sol.route,
            "lasso_mode": sol.lasso_mode,
            "iterations": sol.solver_stats.iterations,
            "wall_time_ms": 1e3 * sol.solver_stats.wall_time,
            "l1_norm": float(np.abs(sol.beta).sum()),
            "dropped_features": list(record.dropped),
        },
        args.output,
    )
    return EXIT_OK


def cmd_path(args):
    problem = _load(args)
    std, _ = standardize(problem)
    X, y = std.X, std.y
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cd = cd_path(X, y, args.lambda2, grid_size=args.grid_size)
    chosen = select_path_records(cd, args.points)
    pairs = [(r.lambda2, r.t) for r in chosen]
    if not pairs:
        _warn("the path never leaves beta = 0; no settings to evaluate")
    sv = sven_path(X, y, pairs, SolverConfig(tol=args.tol))
    for rec, src in zip(sv.records, chosen):
        rec.lambda1 = src.lambda1
    write_path_csv(cd, out / "cd_path.csv")
    write_pairs_csv(pairs, out / "pairs.csv")
    write_path_csv(sv, out / "sven_path.csv")
    p = X.shape[1]
    with (out / "path_plotdata.csv").open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["solver", "t"] + [f"beta_{j + 1}" for j in range(p)])
        for res in (cd, sv):
            for r in res.records:
                w.writerow([r.solver, f"{r.t:.17g}"] + [f"{b:.17g}" for b in r.beta])
    failed = [r for r in sv.records if r.error]
    for r in failed:
        _warn(f"pair (lambda2={r.lambda2:g}, t={r.t:g}) failed: {r.error}")
    return EXIT_SOLVER if failed else EXIT_OK


def cmd_bench(args):
    try:
        sizes = [bench.parse_size(s) for s in args.sizes] if args.sizes else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = bench.run_bench(
        args.regime,
        sizes=sizes,
        seeds=args.seeds,
        repeats=args.repeats,
        lambda2=args.lambda2,
        points=args.points,
        timing=not args.no_time,
    )
    _write_json(report, args.output)
    return EXIT_OK


def cmd_check(args):
    if args.cases < 1:
        raise UsageError("--cases must be at least 1")
    results = check.run_equivalence_suite(args.cases, args.seed, args.tol)
    print(check.format_table(results))
    if args.output:
        _write_json([r.as_dict() for r in results], args.output)
    bad = [r for r in results if not r.passed]
    if bad:
        print("failing seeds: " + " ".join(str(r.seed) for r in bad), file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def build_parser():
    parser = _Parser(
        prog="sven", description="Elastic Net and Lasso through a linear SVM reduction."
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(p):
        p.add_argument("--input", required=True)
        p.add_argument("--format", choices=("csv", "libsvm"), default="csv")
        p.add_argument("--header", action="store_true", help="CSV has a header line")
        p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("solve", help="solve one Elastic Net instance")
    data_args(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--lambda2", type=float, required=True)
    p.add_argument("--solver", choices=("auto", "primal", "dual"), default="auto")
    p.add_argument("--check-budget", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("path", help="coordinate descent path and SVM re-solve")
    data_args(p)
    p.add_argument("--lambda2", type=float, required=True)
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--grid-size", type=int, default=100)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("bench", help="synthetic timing report")
    p.add_argument("--regime", choices=bench.REGIMES, required=True)
    p.add_argument("--sizes", nargs="+", help="e.g. n=50,p=2000")
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--lambda2", type=float, default=1.0)
    p.add_argument("--points", type=int, default=3)
    p.add_argument("--no-time", action="store_true")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="randomized equivalence suite")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        with _thread_limit():
            return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, DimensionError, DegenerateInputError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SvenError, np.linalg.LinAlgError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
