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
# # Benchmark harness
#
# `run_bench` times coordinate descent and both SVM routes on synthetic
# problems, in two regimes: many more features than samples (`pggn`) and
# many more samples than features (`nggp`). It reports times and agreement
# only; it makes no claims about which solver wins.

# %%
import statistics

import numpy as np

from sven.bench import dual_scaling, run_bench

report = run_bench("pggn", sizes=[(50, 2000)], repeats=3, points=3)
for r in report["records"]:
    err = r["linf_vs_cd"]
    print(f"{r['solver']:12s} t={r['t']:7.3f} nnz={r['support_size']:4d} "
          f"{1e3 * r['wall_time']:8.2f} ms  linf={err:.1e}")

# %%
report = run_bench("nggp", sizes=[(5000, 40)], repeats=3, points=3)
for r in report["records"]:
    print(f"{r['solver']:12s} t={r['t']:7.3f} {1e3 * r['wall_time']:8.2f} ms")

# %% [markdown]
# ## Dual route cost against support size
#
# With `n` fixed the dual solver factors systems the size of the active
# set, so time should track the number of selected features rather than
# `p` itself.

# %%
rows = dual_scaling(n=200, ps=(100, 400, 1600), repeats=3)
for r in rows:
    print(f"p={r['p']:5d} nnz={r['support_size']:4d} {1e3 * r['wall_time']:8.2f} ms")

# %%
for a, b in zip(rows, rows[1:]):
    growth = b["wall_time"] / a["wall_time"]
    quad = (b["support_size"] / a["support_size"]) ** 2
    print(f"{a['p']} -> {b['p']}: time x{growth:.1f}, support^2 x{quad:.1f}")
