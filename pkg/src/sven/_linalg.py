"""SPD linear solves shared by the Newton solvers."""

from __future__ import annotations

import numpy as np
import scipy.linalg


def conjugate_gradient(matvec, b, diag=None, x0=None, tol=1e-10, max_iter=None):
    """Jacobi-preconditioned conjugate gradient for ``A x = b``.

    ``matvec`` applies the SPD operator ``A``; ``diag`` is its diagonal
    (used as the preconditioner when given). Stops when
    ``||r|| <= tol * ||b||``. Returns ``(x, iterations, residual_norm)``.
    """
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    if max_iter is None:
        max_iter = 10 * n
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    r = b - matvec(x) if x0 is not None else b.copy()
    inv_diag = None if diag is None else 1.0 / np.asarray(diag, dtype=float)
    z = r * inv_diag if inv_diag is not None else r
    d = z.copy()
    rz = r @ z
    target = tol * np.linalg.norm(b)
    rnorm = np.linalg.norm(r)
    it = 0
    while rnorm > target and it < max_iter:
        Ad = matvec(d)
        step = rz / (d @ Ad)
        x += step * d
        r -= step * Ad
        rnorm = np.linalg.norm(r)
        z = r * inv_diag if inv_diag is not None else r
        rz_new = r @ z
        d = z + (rz_new / rz) * d
        rz = rz_new
        it += 1
    return x, it, rnorm


def spd_solve(A, b, refine=True):
    """Solve ``A x = b`` for dense SPD ``A`` by Cholesky.

    One step of iterative refinement is applied by default; it is cheap
    once the factor exists and recovers digits lost on ill-conditioned
    systems (large C).
    """
    try:
        factor = scipy.linalg.cho_factor(A, lower=True, check_finite=False)
    except np.linalg.LinAlgError:
        # numerically semidefinite: minimum-norm least squares
        return scipy.linalg.lstsq(A, b, check_finite=False)[0]
    x = scipy.linalg.cho_solve(factor, b, check_finite=False)
    if refine:
        x += scipy.linalg.cho_solve(factor, b - A @ x, check_finite=False)
    return x
