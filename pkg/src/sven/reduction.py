"""Elastic Net through a squared-hinge SVM.

The constrained Elastic Net ::

    min_beta ||X beta - y||^2 + lambda2 ||beta||^2   s.t.  |beta|_1 <= t

is turned into a bias-free SVM on ``2p`` samples of dimension ``n``: sample
``j`` is ``x_j - y/t`` with label +1 and sample ``p + j`` is ``x_j + y/t``
with label -1, trained with ``C = 1/(2 lambda2)``. The coefficients are read
off the dual solution as ``beta = t * (alpha[:p] - alpha[p:]) / sum(alpha)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateSolutionError, DimensionError
from .svm import (
    SolverConfig,
    SvmInstance,
    primal_to_dual,
    solve_dual,
    solve_primal,
)

__all__ = [
    "C_MAX",
    "ElasticNetSolution",
    "SolverStats",
    "build_svm_instance",
    "choose_route",
    "recover_beta",
    "sven_solve",
]

#: C used when lambda2 == 0 (Lasso); stands in for the hard-margin limit.
C_MAX = 1e8


@dataclass
class SolverStats:
    iterations: int
    wall_time: float
    converged: bool
    residual: float


@dataclass
class ElasticNetSolution:
    beta: np.ndarray
    t: float
    lambda2: float
    route: str
    alpha_sum: float
    solver_stats: SolverStats
    alpha: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def lasso_mode(self):
        return self.lambda2 == 0

    @property
    def support_size(self):
        return int(np.count_nonzero(self.beta))


def _check_xy(X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim != 2:
        raise DimensionError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[0] != y.shape[0]:
        raise DimensionError(f"X has {X.shape[0]} rows but y has {y.shape[0]} entries")
    return X, y


def build_svm_instance(X, y, t, C=1.0):
    """Build the classification problem whose dual encodes the Elastic Net.

    Returns an :class:`SvmInstance` with ``m = 2p`` samples of dimension
    ``n``; rows ``0..p-1`` are ``x_j - y/t`` (label +1) and rows ``p..2p-1``
    are ``x_j + y/t`` (label -1).
    """
    X, y = _check_xy(X, y)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    p = X.shape[1]
    shift = y / t
    samples = np.vstack([X.T - shift, X.T + shift])
    labels = np.concatenate([np.ones(p), -np.ones(p)])
    return SvmInstance(samples, labels, C)


def recover_beta(alpha, t):
    """``beta_j = t * (alpha_j - alpha_{p+j}) / sum(alpha)``."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.ndim != 1 or alpha.shape[0] % 2:
        raise DimensionError(f"alpha must have even length, got shape {alpha.shape}")
    if np.any(alpha < 0):
        raise ValueError("alpha must be nonnegative")
    total = alpha.sum()
    if not total > 0:
        raise DegenerateSolutionError(
            "sum(alpha) == 0: the SVM selected no support vectors"
        )
    p = alpha.shape[0] // 2
    return t * (alpha[:p] - alpha[p:]) / total


def choose_route(n, p):
    """Primal when the SVM has more samples than dimensions (2p > n)."""
    return "primal" if 2 * p > n else "dual"


def sven_solve(X, y, t, lambda2, cfg=None, *, route="auto", c_max=C_MAX, warm_start=None):
    """Solve the constrained Elastic Net by the SVM reduction.

    Parameters
    ----------
    X, y : array_like
        Standardized design matrix (n, p) and centered response (n,).
    t : float
        L1 budget. The result is the Elastic Net minimizer only when the
        budget binds, i.e. ``t`` is below the L1 norm of the ridge solution.
    lambda2 : float
        L2 penalty. ``0`` selects Lasso mode with ``C = c_max``.
    cfg : SolverConfig, optional
    route : {"auto", "primal", "dual"}
        ``"auto"`` picks primal iff ``2p > n``.
    warm_start : array_like, optional
        Dual vector from a previous solve; used by the dual route only.

    Returns
    -------
    ElasticNetSolution
    """
    X, y = _check_xy(X, y)
    if lambda2 < 0:
        raise ValueError(f"lambda2 must be nonnegative, got {lambda2}")
    cfg = cfg or SolverConfig()
    n, p = X.shape
    if route == "auto":
        route = choose_route(n, p)
    elif route not in ("primal", "dual"):
        raise ValueError(f"unknown route {route!r}")
    C = 1.0 / (2.0 * lambda2) if lambda2 > 0 else c_max

    start = time.perf_counter()
    instance = build_svm_instance(X, y, t, C)
    if route == "primal":
        sol = solve_primal(instance, cfg)
        alpha = primal_to_dual(instance, sol.w)
        stats = (sol.iterations, sol.grad_norm)
    else:
        if warm_start is not None and len(warm_start) != 2 * p:
            warm_start = None
        sol = solve_dual(instance, cfg, warm_start=warm_start)
        alpha = sol.alpha
        stats = (sol.iterations, sol.kkt_residual)
    beta = recover_beta(alpha, t)
    elapsed = time.perf_counter() - start
    return ElasticNetSolution(
        beta=beta,
        t=float(t),
        lambda2=float(lambda2),
        route=route,
        alpha_sum=float(alpha.sum()),
        solver_stats=SolverStats(stats[0], elapsed, True, float(stats[1])),
        alpha=alpha,
    )
