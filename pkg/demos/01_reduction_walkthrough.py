# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # From Elastic Net to a linear SVM
#
# The constrained Elastic Net
#
#     minimize ||X beta - y||^2 + lambda2 ||beta||^2   subject to |beta|_1 <= t
#
# can be solved by training a bias-free squared-hinge SVM on 2p synthetic
# samples, one pair per feature. This notebook builds that instance by hand
# for a small problem and checks the answer against coordinate descent.

# %%
import numpy as np

from sven import build_svm_instance, recover_beta, solve_dual, standardize
from sven.cd import PenalizedSpec, cd_solve, lambda_max
from sven.dataset import RegressionProblem

rng = np.random.default_rng(0)
X_raw = rng.standard_normal((30, 6))
y_raw = X_raw @ np.array([3.0, -2.0, 0, 0, 1.0, 0]) + 0.5 * rng.standard_normal(30)
problem, record = standardize(RegressionProblem(X_raw, y_raw))
X, y = problem.X, problem.y
X.shape, np.linalg.norm(X, axis=0).round(12)

# %% [markdown]
# Columns are centered and scaled to unit length, and `y` is centered. The
# record keeps what is needed to map coefficients back to raw units.
#
# ## A budget that binds
#
# Pick `t` below the L1 norm of the ridge solution, otherwise the constraint
# is inactive and the reduction does not apply.

# %%
lambda2 = 0.5
ridge = np.linalg.solve(X.T @ X + lambda2 * np.eye(6), X.T @ y)
t = 0.5 * np.abs(ridge).sum()
t, np.abs(ridge).sum()

# %% [markdown]
# ## The SVM instance
#
# Feature j contributes the sample `x_j - y/t` with label +1 and `x_j + y/t`
# with label -1. The penalty constant is `C = 1 / (2 lambda2)`.

# %%
inst = build_svm_instance(X, y, t, C=1 / (2 * lambda2))
inst.samples.shape, inst.labels[:3], inst.labels[-3:]

# %%
dual = solve_dual(inst)
dual.iterations, dual.kkt_residual

# %% [markdown]
# Support vectors (positive `alpha`) line up with selected features: a
# feature is in the model if either of its two samples carries weight.

# %%
alpha = dual.alpha
np.column_stack([alpha[:6], alpha[6:]]).round(4)

# %%
beta = recover_beta(alpha, t)
beta.round(6), np.abs(beta).sum()

# %% [markdown]
# ## Same answer from coordinate descent
#
# The penalized form with the right `lambda1` has the same minimizer. Search
# for it by bisection on the L1 norm of the coordinate descent solution.

# %%
lo, hi = 0.0, lambda_max(X, y)
for _ in range(200):
    mid = 0.5 * (lo + hi)
    b = cd_solve(X, y, PenalizedSpec(mid, lambda2, tol=1e-14))
    lo, hi = (mid, hi) if np.abs(b).sum() > t else (lo, mid)
np.abs(b - beta).max()

# %% [markdown]
# Back in raw units, with an intercept:

# %%
coef, intercept = record.coef_to_original(beta)
coef.round(4), round(intercept, 4)
