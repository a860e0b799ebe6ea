"""Regularization paths: harvest (lambda2, t) settings from a coordinate
descent path and re-solve them with the SVM reduction."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from .cd import PenalizedSpec, cd_solve, lambda_max
from .errors import NonConvergenceError, SvenError
from .reduction import sven_solve

__all__ = [
    "PathRecord",
    "PathResult",
    "cd_path",
    "select_path_points",
    "select_path_records",
    "sven_path",
    "lambda1_for_budget",
    "write_path_csv",
    "read_path_csv",
    "write_pairs_csv",
    "read_pairs_csv",
]


@dataclass
class PathRecord:
    lambda1: float
    lambda2: float
    t: float
    beta: np.ndarray
    support_size: int
    solver: str
    wall_time: float = 0.0
    error: Optional[str] = None


@dataclass
class PathResult:
    records: List[PathRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def betas(self):
        return np.array([r.beta for r in self.records])

    @property
    def ts(self):
        return np.array([r.t for r in self.records])


def cd_path(X, y, lambda2, grid_size=100, ratio=1e-3, tol=1e-10, max_sweeps=10000):
    """Warm-started coordinate descent along a log-spaced lambda1 grid.

    The grid runs from ``lambda_max(X, y)`` down to ``ratio`` times that.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    lmax = lambda_max(X, y)
    if lmax == 0:
        grid = np.zeros(grid_size)
    else:
        grid = np.geomspace(lmax, ratio * lmax, grid_size)
    beta = np.zeros(X.shape[1])
    result = PathResult()
    for k, lam in enumerate(grid):
        if lam == 0 and lambda2 == 0:
            beta = np.zeros(X.shape[1])
            elapsed = 0.0
        else:
            start = time.perf_counter()
            try:
                beta = cd_solve(X, y, PenalizedSpec(lam, lambda2, tol, max_sweeps), beta)
            except NonConvergenceError as exc:
                raise NonConvergenceError(
                    f"path point {k}: {exc}", exc.last_iterate, exc.residual, exc.iterations
                ) from exc
            elapsed = time.perf_counter() - start
        result.records.append(
            PathRecord(
                lambda1=float(lam),
                lambda2=float(lambda2),
                t=float(np.abs(beta).sum()),
                beta=beta.copy(),
                support_size=int(np.count_nonzero(beta)),
                solver="cd",
                wall_time=elapsed,
            )
        )
    return result


def select_path_records(path, k):
    """Records behind :func:`select_path_points`."""
    if k < 1:
        raise ValueError("k must be at least 1")
    seen = set()
    distinct = []
    for rec in path.records:
        if rec.support_size == 0 or rec.support_size in seen:
            continue
        seen.add(rec.support_size)
        distinct.append(rec)
    if len(distinct) <= k:
        return distinct
    picks = np.unique(np.round(np.linspace(0, len(distinct) - 1, k)).astype(int))
    return [distinct[i] for i in picks]


def select_path_points(path, k):
    """Up to ``k`` (lambda2, t) pairs with distinct support sizes.

    The all-zero head of the path is skipped, the first record of each
    support size is kept, and ``k`` of those are taken evenly spaced by
    position along the path.
    """
    return [(r.lambda2, r.t) for r in select_path_records(path, k)]


def sven_path(X, y, pairs, cfg=None, route="auto"):
    """Run :func:`sven_solve` on every (lambda2, t) pair.

    Dual solutions warm-start the next pair. A failed pair is recorded with
    its error message and a NaN coefficient vector; the rest still run.
    """
    X = np.asarray(X, dtype=float)
    p = X.shape[1]
    result = PathResult()
    warm = None
    for lambda2, t in pairs:
        start = time.perf_counter()
        try:
            sol = sven_solve(X, y, t, lambda2, cfg, route=route, warm_start=warm)
        except (SvenError, ValueError, np.linalg.LinAlgError) as exc:
            result.records.append(
                PathRecord(np.nan, lambda2, t, np.full(p, np.nan), 0, "sven",
                           time.perf_counter() - start, error=str(exc))
            )
            warm = None
            continue
        warm = sol.alpha if sol.route == "dual" else None
        result.records.append(
            PathRecord(
                lambda1=np.nan,
                lambda2=float(lambda2),
                t=float(t),
                beta=sol.beta,
                support_size=sol.support_size,
                solver="sven",
                wall_time=sol.solver_stats.wall_time,
            )
        )
    return result


def lambda1_for_budget(X, y, t, lambda2, tol=1e-12, max_iter=100):
    """Find the lambda1 whose coordinate descent solution has ``|beta|_1 = t``.

    ``|beta(lambda1)|_1`` is continuous, nonincreasing and piecewise linear in
    lambda1 (linear while the signed support is fixed), so each step solves
    the linear model of the current piece and falls back to bisection when
    that leaves the bracket.

    Returns ``(lambda1, beta)``.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if not t > 0:
        raise ValueError("t must be positive")
    hi = lambda_max(X, y)
    lo = 0.0
    spec_tol = 1e-13

    def solve(lam, warm):
        if lam == 0 and lambda2 == 0:
            lam = 1e-12 * hi
        return cd_solve(X, y, PenalizedSpec(lam, lambda2, spec_tol, 100000), warm)

    beta = np.zeros(X.shape[1])
    lam = 0.5 * hi
    for _ in range(max_iter):
        beta = solve(lam, beta)
        norm = np.abs(beta).sum()
        gap = norm - t
        if abs(gap) <= tol * max(1.0, t):
            return lam, beta
        if gap > 0:
            lo = lam
        else:
            hi = lam
        guess = _linear_piece_guess(X, y, beta, lambda2, t)
        if guess is not None and lo < guess < hi:
            lam = guess
        else:
            lam = 0.5 * (lo + hi)
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    raise NonConvergenceError(
        f"no lambda1 found with |beta|_1 = {t} (closest {np.abs(beta).sum()})",
        last_iterate=beta,
    )


def _linear_piece_guess(X, y, beta, lambda2, t):
    S = np.flatnonzero(beta)
    if S.size == 0:
        return None
    s = np.sign(beta[S])
    XS = X[:, S]
    M = XS.T @ XS + lambda2 * np.eye(S.size)
    try:
        a = np.linalg.solve(M, XS.T @ y)
        b = np.linalg.solve(M, s)
    except np.linalg.LinAlgError:
        return None
    # on this piece beta_S = a - (lambda1 / 2) b, so |beta|_1 = s.a - (lambda1 / 2) s.b
    slope = 0.5 * (s @ b)
    if slope <= 0:
        return None
    return float((s @ a - t) / slope)


def _fmt(x):
    return f"{x:.17g}"


def write_path_csv(path_result, filename):
    records = path_result.records
    p = len(records[0].beta) if records else 0
    with Path(filename).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["lambda1", "lambda2", "t", "nnz"] + [f"beta_{j + 1}" for j in range(p)])
        for r in records:
            w.writerow([_fmt(r.lambda1), _fmt(r.lambda2), _fmt(r.t), r.support_size]
                       + [_fmt(b) for b in r.beta])


def read_path_csv(filename, solver="cd"):
    result = PathResult()
    with Path(filename).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            beta = np.array([float(v) for v in row[4:]])
            result.records.append(
                PathRecord(float(row[0]), float(row[1]), float(row[2]), beta,
                           int(row[3]), solver)
            )
    return result


def write_pairs_csv(pairs, filename):
    with Path(filename).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["lambda2", "t"])
        for lambda2, t in pairs:
            w.writerow([_fmt(lambda2), _fmt(t)])


def read_pairs_csv(filename):
    with Path(filename).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader)
        return [(float(a), float(b)) for a, b in reader]
