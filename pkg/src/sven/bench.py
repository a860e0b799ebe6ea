"""Desk-scale timing harness.

Reports wall times and cross-solver agreement; it never asserts which
solver is faster.
"""

from __future__ import annotations

import hashlib
import os
import platform
import statistics
import time

import numpy as np

from .cd import PenalizedSpec, cd_solve
from .dataset import RegressionProblem, standardize
from .path import cd_path, select_path_records
from .reduction import choose_route, sven_solve
from .svm import SolverConfig

REGIMES = ("pggn", "nggp")
DEFAULT_SIZES = {
    "pggn": [(50, 2000)],
    "nggp": [(5000, 40)],
}
# dual kernels above this many samples are skipped (memory)
MAX_KERNEL_SAMPLES = 8000


def synthetic_problem(n, p, seed, n_informative=10, noise=0.5):
    """Standardized Gaussian design with ``y = X beta0 + noise``, sparse beta0."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    k = min(n_informative, p)
    beta0 = np.zeros(p)
    beta0[rng.choice(p, size=k, replace=False)] = rng.standard_normal(k) * 2.0
    y = X @ beta0 + noise * rng.standard_normal(n)
    problem, _ = standardize(RegressionProblem(X, y))
    return problem.X, problem.y


def correlated_problem(n, p, seed=0, rho=0.5, noise=1.0):
    """Standardized design with equicorrelated features and a dense signal.

    Stands in for small clinical-style regression data (e.g. 97 x 8).
    """
    rng = np.random.default_rng(seed)
    cov = np.full((p, p), rho) + (1 - rho) * np.eye(p)
    X = rng.standard_normal((n, p)) @ np.linalg.cholesky(cov).T
    beta0 = rng.uniform(-1.0, 1.0, p) * np.linspace(1.0, 0.1, p)
    y = X @ beta0 + noise * rng.standard_normal(n)
    problem, _ = standardize(RegressionProblem(X, y))
    return problem.X, problem.y


def instance_digest(X, y):
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(X, dtype=np.float64).tobytes())
    h.update(np.ascontiguousarray(y, dtype=np.float64).tobytes())
    return h.hexdigest()


def environment():
    return {
        "threads": os.environ.get("SVEN_THREADS"),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "machine": platform.machine(),
    }


def _timed(fn, repeats, timing):
    out = None
    times = []
    for _ in range(repeats if timing else 1):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return out, (statistics.median(times) if timing else None)


def parse_size(text):
    """``"n=50,p=2000"`` -> ``(50, 2000)``."""
    fields = dict(part.split("=", 1) for part in text.split(","))
    try:
        return int(fields["n"]), int(fields["p"])
    except (KeyError, ValueError):
        raise ValueError(f"size must look like n=50,p=2000, got {text!r}") from None


def run_bench(regime, sizes=None, seeds=(0,), repeats=3, lambda2=1.0, points=3,
              grid_size=20, timing=True, cfg=None):
    """Time SVM-reduction routes and coordinate descent on synthetic cases.

    For every (size, seed) a short coordinate descent path is computed and
    ``points`` settings with distinct support sizes are solved by each
    solver. Returns a JSON-ready dict.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    cfg = cfg or SolverConfig()
    sizes = sizes or DEFAULT_SIZES[regime]
    records = []
    for n, p in sizes:
        for seed in seeds:
            X, y = synthetic_problem(n, p, seed)
            digest = instance_digest(X, y)
            path = cd_path(X, y, lambda2, grid_size=grid_size)
            auto = choose_route(n, p)
            routes = ["primal"]
            if 2 * p <= MAX_KERNEL_SAMPLES:
                routes.append("dual")
            for rec in select_path_records(path, points):
                base = {
                    "seed": int(seed), "regime": regime, "n": n, "p": p,
                    "lambda2": lambda2, "lambda1": rec.lambda1, "t": rec.t,
                    "digest": digest, "auto_route": auto,
                }
                beta_cd, t_cd = _timed(
                    lambda: cd_solve(X, y, PenalizedSpec(rec.lambda1, lambda2)),
                    repeats, timing,
                )
                records.append({
                    **base, "solver": "cd", "route": None, "wall_time": t_cd,
                    "linf_vs_cd": 0.0, "support_size": int(np.count_nonzero(beta_cd)),
                    "kernel_size": None, "converged": True,
                })
                for route in routes:
                    entry = {**base, "solver": f"sven-{route}", "route": route,
                             "kernel_size": [2 * p, 2 * p] if route == "dual" else None}
                    try:
                        sol, wall = _timed(
                            lambda: sven_solve(X, y, rec.t, lambda2, cfg, route=route),
                            repeats, timing,
                        )
                    except Exception as exc:  # reported, not raised
                        entry.update(wall_time=None, linf_vs_cd=None, support_size=None,
                                     converged=False, error=str(exc))
                    else:
                        entry.update(
                            wall_time=wall,
                            linf_vs_cd=float(np.max(np.abs(sol.beta - beta_cd))),
                            support_size=sol.support_size,
                            converged=True,
                            iterations=sol.solver_stats.iterations,
                        )
                    records.append(entry)
    return {
        "regime": regime,
        "repeats": repeats if timing else 0,
        "timing": timing,
        "environment": environment(),
        "records": records,
    }


def dual_scaling(n=200, ps=(100, 400, 1600), seed=0, repeats=3, lambda2=1.0,
                 support_fraction=0.125, cfg=None):
    """Median dual-route solve time as the feature count grows.

    For each ``p`` the budget is taken from the coordinate descent path point
    whose support size is closest to ``support_fraction * p``.
    """
    cfg = cfg or SolverConfig()
    rows = []
    for p in ps:
        X, y = synthetic_problem(n, p, seed, n_informative=max(10, p // 8))
        path = cd_path(X, y, lambda2, grid_size=60)
        target = support_fraction * p
        rec = min(path.records, key=lambda r: abs(r.support_size - target))
        sol, wall = _timed(
            lambda: sven_solve(X, y, rec.t, lambda2, cfg, route="dual"), repeats, True
        )
        rows.append({"n": n, "p": p, "t": rec.t, "support_size": sol.support_size,
                     "wall_time": wall})
    return rows
