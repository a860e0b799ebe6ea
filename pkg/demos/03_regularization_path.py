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
# # Regularization paths from both solvers
#
# Coordinate descent traces the penalized path on a lambda1 grid. Each grid
# point with a new support size gives a budget `t = |beta|_1`; the SVM
# reduction is then solved at those budgets and overlaid on the path.
#
# The data are a synthetic stand-in for a small clinical regression (97
# samples, 8 correlated features).

# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from sven.bench import correlated_problem
from sven.path import cd_path, select_path_records, sven_path

X, y = correlated_problem(97, 8, seed=0)
out_dir = Path("demo_output")
out_dir.mkdir(exist_ok=True)

# %%
lambda2 = 1.0
cd = cd_path(X, y, lambda2, grid_size=100)
chosen = select_path_records(cd, 40)
sv = sven_path(X, y, [(r.lambda2, r.t) for r in chosen])
[r.support_size for r in chosen]

# %% [markdown]
# Only eight settings survive: there are only eight distinct support sizes
# along this path.

# %%
gaps = [np.abs(a.beta - b.beta).max() for a, b in zip(chosen, sv.records)]
max(gaps)

# %%
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(cd.ts, cd.betas, color="0.6", lw=1)
sv_betas = np.array([r.beta for r in sv.records])
ax.plot([r.t for r in sv.records], sv_betas, "o", ms=4, mfc="none")
ax.set_xlabel("t = |beta|_1")
ax.set_ylabel("coefficient")
ax.set_title(f"lines: coordinate descent, circles: SVM (lambda2={lambda2:g})")
fig.tight_layout()
fig.savefig(out_dir / "path_overlay.png", dpi=120)

# %% [markdown]
# ## Lasso
#
# With `lambda2 = 0` the SVM penalty constant is pushed to a large cap and
# the reduction recovers the Lasso path.

# %%
cd0 = cd_path(X, y, 0.0, grid_size=100)
chosen0 = select_path_records(cd0, 40)
sv0 = sven_path(X, y, [(r.lambda2, r.t) for r in chosen0])
max(np.abs(a.beta - b.beta).max() for a, b in zip(chosen0, sv0.records))
