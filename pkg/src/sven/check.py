"""Randomized equivalence suite: SVM reduction against coordinate descent."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import reduction
from .cd import PenalizedSpec, cd_solve, lambda_max
from .dataset import RegressionProblem, standardize
from .errors import SvenError
from .path import lambda1_for_budget

LAMBDA2_CHOICES = (0.1, 1.0, 10.0)
BUDGET_FRACTIONS = (0.3, 0.6, 0.9)


@dataclass
class CaseResult:
    index: int
    seed: int
    n: int
    p: int
    lambda2: float
    fraction: float
    t: float
    lambda1: float
    route: str
    linf: float
    budget_gap: float
    passed: bool
    error: Optional[str] = None

    def as_dict(self):
        return asdict(self)


def case_seed(seed, index):
    """Per-case seed; enough on its own to rebuild the case."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def random_problem(rng, n, p, n_informative=3, noise=1.0):
    """Gaussian design with a sparse linear signal, standardized."""
    X = rng.standard_normal((n, p))
    k = min(n_informative, p)
    coef = np.zeros(p)
    coef[:k] = rng.standard_normal(k) * 2.0
    y = X @ coef + noise * rng.standard_normal(n)
    problem, _ = standardize(RegressionProblem(X, y))
    return problem.X, problem.y


def make_case(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 61))
    p = int(rng.integers(2, 41))
    lambda2 = float(rng.choice(LAMBDA2_CHOICES))
    fraction = float(rng.choice(BUDGET_FRACTIONS))
    X, y = random_problem(rng, n, p)
    return X, y, lambda2, fraction


def run_case(index, seed, tol=1e-4, cfg=None):
    s = case_seed(seed, index)
    X, y, lambda2, fraction = make_case(s)
    n, p = X.shape
    small = cd_solve(X, y, PenalizedSpec(1e-3 * lambda_max(X, y), lambda2, tol=1e-12))
    t = fraction * float(np.abs(small).sum())
    lambda1, beta_cd = lambda1_for_budget(X, y, t, lambda2)
    try:
        sol = reduction.sven_solve(X, y, t, lambda2, cfg)
    except SvenError as exc:
        return CaseResult(index, s, n, p, lambda2, fraction, t, lambda1, "",
                          float("inf"), float("inf"), False, str(exc))
    linf = float(np.max(np.abs(sol.beta - beta_cd)))
    gap = abs(float(np.abs(sol.beta).sum()) - t)
    return CaseResult(index, s, n, p, lambda2, fraction, t, lambda1, sol.route,
                      linf, gap, bool(linf <= tol), None)


def run_equivalence_suite(cases=200, seed=0, tol=1e-4, cfg=None):
    if cases < 1:
        raise ValueError("cases must be at least 1")
    return [run_case(i, seed, tol, cfg) for i in range(cases)]


def format_table(results):
    lines = [f"{'case':>5} {'seed':>11} {'n':>3} {'p':>3} {'lambda2':>7} "
             f"{'route':>6} {'linf':>10}  status"]
    for r in results:
        lines.append(
            f"{r.index:>5} {r.seed:>11} {r.n:>3} {r.p:>3} {r.lambda2:>7g} "
            f"{r.route:>6} {r.linf:>10.3e}  {'pass' if r.passed else 'FAIL'}"
        )
    ok = sum(r.passed for r in results)
    lines.append(f"{ok}/{len(results)} pass")
    return "\n".join(lines)
