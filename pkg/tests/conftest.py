import numpy as np
import pytest

from sven.dataset import RegressionProblem, standardize

A = 1 / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def tiny():
    """The 2 x 1 standardized fixture: X = (1/sqrt2, -1/sqrt2), y = (1, -1)."""
    return np.array([[A], [-A]]), np.array([1.0, -1.0])


def random_standardized(rng, n, p, informative=3):
    X = rng.standard_normal((n, p))
    coef = np.zeros(p)
    k = min(informative, p)
    coef[:k] = rng.standard_normal(k) * 2
    y = X @ coef + rng.standard_normal(n)
    prob, _ = standardize(RegressionProblem(X, y))
    return prob.X, prob.y


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
