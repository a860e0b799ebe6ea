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
# # Two ways to train the same SVM
#
# The primal Newton solver works in the sample dimension of the SVM, which
# is `n` here; the dual active-set solver works with a 2p x 2p kernel. Which
# one is cheaper depends on the shape of `X`.

# %%
import time

import numpy as np

from sven import SolverConfig, solve_dual, solve_primal, sven_solve
from sven.bench import synthetic_problem
from sven.reduction import build_svm_instance, choose_route
from sven.svm import dual_objective, dual_to_primal, primal_objective

# %% [markdown]
# ## Agreement on one instance

# %%
X, y = synthetic_problem(60, 25, seed=1)
inst = build_svm_instance(X, y, t=1.0, C=2.0)
p_sol = solve_primal(inst)
d_sol = solve_dual(inst)
np.abs(p_sol.w - dual_to_primal(inst, d_sol.alpha)).max()

# %% [markdown]
# Strong duality, in the scaling used here: the dual minimum is `-2` times
# the primal minimum.

# %%
primal_objective(inst, p_sol.w), dual_objective(inst, d_sol.alpha)

# %% [markdown]
# ## The routing rule
#
# `sven_solve` picks the primal route when `2p > n` and the dual otherwise.

# %%
for n, p in [(50, 2000), (2000, 50), (100, 50)]:
    print(n, p, choose_route(n, p))

# %% [markdown]
# ## Timing both routes on both shapes

# %%
def timed(fn, repeats=3):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return out, best


cfg = SolverConfig()
for n, p in [(40, 1500), (3000, 30)]:
    X, y = synthetic_problem(n, p, seed=0)
    for route in ("primal", "dual"):
        sol, secs = timed(lambda: sven_solve(X, y, 5.0, 1.0, cfg, route=route))
        print(f"n={n:5d} p={p:5d} {route:6s} {1e3 * secs:8.2f} ms  nnz={sol.support_size}")
