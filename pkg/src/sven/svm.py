"""Bias-free linear SVM with squared hinge loss.

Primal problem::

    min_w  0.5 * ||w||^2 + C * sum_i max(0, 1 - y_i w^T x_i)^2

Dual problem (the form used throughout this package)::

    min_{alpha >= 0}  ||Z alpha||^2 + 1/(2C) * sum_i alpha_i^2 - 2 * sum_i alpha_i

where the columns of ``Z`` are the label-signed samples ``y_i x_i``. The two
are linked by ``w = Z alpha`` and ``alpha_i = 2C * max(0, 1 - y_i w^T x_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from ._linalg import conjugate_gradient, spd_solve
from .errors import DimensionError, NonConvergenceError

__all__ = [
    "SvmInstance",
    "SolverConfig",
    "PrimalSolution",
    "DualSolution",
    "primal_objective",
    "primal_gradient",
    "dual_objective",
    "dual_gradient",
    "kernel_matrix",
    "kkt_residual",
    "primal_to_dual",
    "dual_to_primal",
    "solve_primal",
    "solve_dual",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SvmInstance:
    """Binary classification data: ``samples`` is (m, d), one sample per row."""

    samples: np.ndarray
    labels: np.ndarray
    C: float

    def __post_init__(self):
        X = np.array(self.samples, dtype=float)
        y = np.array(self.labels, dtype=float).ravel()
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise DimensionError(f"samples must be a non-empty 2-D array, got {X.shape}")
        if y.shape[0] != X.shape[0]:
            raise DimensionError(f"{X.shape[0]} samples but {y.shape[0]} labels")
        if not np.all(np.abs(y) == 1.0):
            raise ValueError("labels must be +1 or -1")
        if not (np.isfinite(self.C) and self.C > 0):
            raise ValueError(f"C must be positive and finite, got {self.C}")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "samples", X)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "C", float(self.C))

    @property
    def m(self):
        return self.samples.shape[0]

    @property
    def d(self):
        return self.samples.shape[1]

    @cached_property
    def signed(self):
        """Label-signed samples, one per row (the transpose of ``Z``)."""
        z = self.labels[:, None] * self.samples
        z.setflags(write=False)
        return z


@dataclass
class SolverConfig:
    """Tolerances and switches for :func:`solve_primal` / :func:`solve_dual`.

    Newton systems larger than ``cg_threshold`` are solved with Jacobi
    preconditioned CG instead of a Cholesky factorization.
    """

    tol: float = 1e-8
    max_iter: int = 200
    cg_threshold: int = 2000
    cg_tol: float = 1e-12
    cg_max_iter: Optional[int] = None
    line_search: bool = True

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass
class PrimalSolution:
    w: np.ndarray
    slacks: np.ndarray
    objective: float
    iterations: int
    grad_norm: float
    objective_history: list = field(default_factory=list)


@dataclass
class DualSolution:
    alpha: np.ndarray
    objective: float
    kkt_residual: float
    iterations: int
    kernel_shape: tuple = ()


def _check_len(v, n, what):
    v = np.asarray(v, dtype=float)
    if v.shape != (n,):
        raise DimensionError(f"{what} must have shape ({n},), got {v.shape}")
    return v


def primal_objective(instance, w):
    w = _check_len(w, instance.d, "w")
    xi = np.maximum(0.0, 1.0 - instance.signed @ w)
    return 0.5 * float(w @ w) + instance.C * float(xi @ xi)


def primal_gradient(instance, w):
    w = _check_len(w, instance.d, "w")
    xi = np.maximum(0.0, 1.0 - instance.signed @ w)
    return w - 2.0 * instance.C * (instance.signed.T @ xi)


def dual_objective(instance, alpha):
    alpha = _check_len(alpha, instance.m, "alpha")
    if np.any(alpha < 0):
        raise ValueError("alpha must be nonnegative")
    v = instance.signed.T @ alpha
    return float(v @ v) + float(alpha @ alpha) / (2.0 * instance.C) - 2.0 * float(alpha.sum())


def kernel_matrix(instance):
    """``Z^T Z``: inner products of the label-signed samples."""
    Z = instance.signed
    return Z @ Z.T


def dual_gradient(instance, alpha, K=None):
    alpha = _check_len(alpha, instance.m, "alpha")
    if K is None:
        Ka = instance.signed @ (instance.signed.T @ alpha)
    else:
        Ka = K @ alpha
    return 2.0 * Ka + alpha / instance.C - 2.0


def _kkt_from_gradient(alpha, g):
    viol = np.where(alpha > 0, np.abs(g), np.maximum(0.0, -g))
    return float(viol.max())


def kkt_residual(instance, alpha, K=None):
    """Largest violation of the dual optimality conditions.

    For ``alpha_i > 0`` this is ``|g_i|``; for ``alpha_i == 0`` it is
    ``max(0, -g_i)``, with ``g`` the dual gradient.
    """
    alpha = _check_len(alpha, instance.m, "alpha")
    if np.any(alpha < 0):
        raise ValueError("alpha must be nonnegative")
    return _kkt_from_gradient(alpha, dual_gradient(instance, alpha, K))


def primal_to_dual(instance, w):
    """``alpha_i = 2C * max(0, 1 - y_i w^T x_i)``."""
    w = _check_len(w, instance.d, "w")
    return 2.0 * instance.C * np.maximum(0.0, 1.0 - instance.signed @ w)


def dual_to_primal(instance, alpha):
    """``w = sum_i y_i alpha_i x_i``."""
    alpha = _check_len(alpha, instance.m, "alpha")
    return instance.signed.T @ alpha


def _solve_spd(matvec, dense, b, diag, x0, cfg):
    if b.shape[0] <= cfg.cg_threshold:
        return spd_solve(dense(), b)
    x, _, _ = conjugate_gradient(
        matvec, b, diag=diag, x0=x0, tol=cfg.cg_tol, max_iter=cfg.cg_max_iter
    )
    return x


def solve_primal(instance, cfg=None, w0=None):
    """Newton's method on the primal over the current violator set.

    Each step solves ``(I + 2C Z_V^T Z_V) w = 2C Z_V^T 1`` where ``V`` are the
    samples with margin below one; the step is halved until the objective
    does not increase.
    """
    cfg = cfg or SolverConfig()
    Z = instance.signed
    C = instance.C
    d = instance.d
    w = np.zeros(d) if w0 is None else _check_len(w0, d, "w0").copy()

    def objective(v):
        xi = np.maximum(0.0, 1.0 - Z @ v)
        return 0.5 * float(v @ v) + C * float(xi @ xi)

    g0 = np.linalg.norm(2.0 * C * Z.sum(axis=0))
    target = cfg.tol * max(1.0, g0)
    obj = objective(w)
    history = [obj]
    gnorm = np.inf
    V_prev = None
    full_step = False
    for it in range(cfg.max_iter + 1):
        margins = Z @ w
        V = margins < 1.0
        ZV = Z[V]
        grad = w - 2.0 * C * (ZV.T @ (1.0 - margins[V]))
        gnorm = float(np.linalg.norm(grad))
        # a full Newton step with an unchanged violator set is the exact optimum
        stable = full_step and np.array_equal(V, V_prev)
        if gnorm <= target and (stable or gnorm == 0.0):
            xi = np.maximum(0.0, 1.0 - margins)
            return PrimalSolution(w, xi, obj, it, gnorm, history)
        if it == cfg.max_iter:
            break

        V_prev = V
        rhs = 2.0 * C * ZV.sum(axis=0)
        w_new = _solve_spd(
            lambda v: v + 2.0 * C * (ZV.T @ (ZV @ v)),
            lambda: np.eye(d) + 2.0 * C * (ZV.T @ ZV),
            rhs,
            1.0 + 2.0 * C * np.einsum("ij,ij->j", ZV, ZV),
            w,
            cfg,
        )
        obj_new = objective(w_new)
        slack = 4 * _EPS * max(1.0, abs(obj))
        full_step = True
        if cfg.line_search and obj_new > obj + slack:
            full_step = False
            step = w_new - w
            s = 0.5
            while s > 1e-12:
                cand = w + s * step
                obj_new = objective(cand)
                if obj_new <= obj + slack:
                    w_new = cand
                    break
                s *= 0.5
            else:
                w_new, obj_new = w, obj
        w, obj = w_new, obj_new
        history.append(obj)
    raise NonConvergenceError(
        f"primal Newton did not converge in {cfg.max_iter} iterations "
        f"(gradient norm {gnorm:.3e})",
        last_iterate=w,
        residual=gnorm,
        iterations=cfg.max_iter,
    )


class _DualWorkspace:
    """Cached kernel plus face solves for the active-set iteration."""

    def __init__(self, instance, cfg):
        self.instance = instance
        self.cfg = cfg
        self.K = kernel_matrix(instance)
        self.eps = 1.0 / (2.0 * instance.C)
        self.diagK = np.diag(self.K).copy()

    def objective(self, alpha, Ka=None):
        if Ka is None:
            Ka = self.K @ alpha
        return float(alpha @ Ka) + self.eps * float(alpha @ alpha) - 2.0 * float(alpha.sum())

    def face_solve(self, A, x0=None):
        """Minimizer over ``{alpha : alpha_i = 0 for i not in A}`` ignoring signs."""
        idx = np.flatnonzero(A)
        k = idx.size
        if k == 0:
            return np.zeros(0)
        ones = np.ones(k)
        d = self.instance.d
        if k > d:
            # Same system through the push-through identity; d x d instead of k x k.
            ZA = self.instance.signed[idx]
            w = spd_solve(self.eps * np.eye(d) + ZA.T @ ZA, ZA.sum(axis=0))
            return (1.0 - ZA @ w) / self.eps
        KA = self.K[np.ix_(idx, idx)]
        KA[np.diag_indices(k)] += self.eps
        if k <= self.cfg.cg_threshold:
            return spd_solve(KA, ones)
        x, _, _ = conjugate_gradient(
            lambda v: KA @ v, ones, diag=np.diag(KA), x0=x0,
            tol=self.cfg.cg_tol, max_iter=self.cfg.cg_max_iter,
        )
        return x

    def face_optimum(self, P, alpha):
        """Lawson-Hanson inner loop: optimum on the face of ``P`` with alpha > 0.

        ``alpha`` must be feasible and supported inside ``P``. Each pass moves
        toward the unconstrained face minimizer until a bound is hit, then
        drops the bound indices. Terminates in at most ``|P|`` passes.
        """
        P = P.copy()
        alpha = alpha.copy()
        while P.any():
            z = self.face_solve(P, alpha[P])
            if np.all(z > 0):
                alpha[:] = 0.0
                alpha[P] = z
                return alpha
            cur = alpha[P]
            neg = z <= 0
            blocked = neg & (cur <= 0)
            if blocked.any():
                idx = np.flatnonzero(P)
                P[idx[blocked]] = False
                continue
            ratios = np.full(cur.shape, np.inf)
            ratios[neg] = cur[neg] / (cur[neg] - z[neg])
            hit = int(np.argmin(ratios))
            new = cur + ratios[hit] * (z - cur)
            new[hit] = 0.0
            new[new <= 0] = 0.0
            alpha[P] = new
            P &= alpha > 0
        alpha[:] = 0.0
        return alpha


def _rounding_floor(K, alpha, C):
    # size of the rounding error in the dual gradient; only exceeds a sane
    # tolerance when C is huge (Lasso mode)
    S = np.flatnonzero(alpha)
    scale = 2.0 * (alpha[S] @ np.abs(K[S])) + alpha / C
    return 64 * _EPS * max(1.0, float(scale.max()))


def solve_dual(instance, cfg=None, warm_start=None):
    """Active-set Newton method on the dual.

    The kernel ``K = Z^T Z`` is formed once. Each iteration takes the active
    set ``A = {alpha_i > 0} | {g_i < 0}``, solves
    ``(K_AA + I/(2C)) alpha_A = 1``, and clips negative entries to zero. If
    the clipped point fails to lower the objective, a Lawson-Hanson step is
    taken instead, which guarantees progress.
    """
    cfg = cfg or SolverConfig()
    ws = _DualWorkspace(instance, cfg)
    K = ws.K
    C = instance.C
    m = instance.m
    if warm_start is None:
        alpha = np.zeros(m)
    else:
        alpha = _check_len(warm_start, m, "warm_start").copy()
        if np.any(alpha < 0):
            raise ValueError("warm_start must be nonnegative")

    def K_times(a):
        S = np.flatnonzero(a)
        return a[S] @ K[S]  # K is symmetric; row gathers are contiguous

    res = np.inf
    for it in range(cfg.max_iter + 1):
        Ka = K_times(alpha)
        g = 2.0 * Ka + alpha / C - 2.0
        res = _kkt_from_gradient(alpha, g)
        if res <= cfg.tol or (res < 1e-2 and res <= _rounding_floor(K, alpha, C)):
            return DualSolution(alpha, ws.objective(alpha, Ka), res, it, K.shape)
        if it == cfg.max_iter:
            break

        A = (alpha > 0) | (g < 0)
        z = ws.face_solve(A, alpha[A])
        if np.all(z >= 0):
            alpha = np.zeros(m)
            alpha[A] = z
            continue
        # zero-clip, shortening the step until the objective drops
        f_old = ws.objective(alpha, Ka)
        base = alpha[A]
        for s in 0.5 ** np.arange(6):
            cand = np.zeros(m)
            cand[A] = np.maximum(base + s * (z - base), 0.0)
            if ws.objective(cand, K_times(cand)) < f_old:
                break
        else:
            cand = None
        if cand is not None:
            alpha = cand
            continue
        # make alpha optimal on its own support, then add the single most
        # violating coordinate (one Lawson-Hanson outer step)
        alpha = ws.face_optimum(alpha > 0, alpha)
        g = 2.0 * K_times(alpha) + alpha / C - 2.0
        gz = np.where(alpha > 0, np.inf, g)
        j = int(np.argmin(gz))
        if gz[j] < 0:
            P = alpha > 0
            P[j] = True
            alpha = ws.face_optimum(P, alpha)
    raise NonConvergenceError(
        f"dual active set did not converge in {cfg.max_iter} iterations "
        f"(KKT residual {res:.3e})",
        last_iterate=alpha,
        residual=res,
        iterations=cfg.max_iter,
    )
