import numpy as np
import pytest

from conftest import random_standardized
from sven.bench import correlated_problem
from sven.cd import PenalizedSpec, cd_solve, lambda_max
from sven.path import (
    PathRecord,
    PathResult,
    cd_path,
    lambda1_for_budget,
    read_pairs_csv,
    read_path_csv,
    select_path_points,
    sven_path,
    write_pairs_csv,
    write_path_csv,
)


def fake_path(supports):
    return PathResult([
        PathRecord(1.0 / (k + 1), 0.5, 0.1 * k, np.zeros(3), s, "cd")
        for k, s in enumerate(supports)
    ])


def test_cd_path_starts_at_zero(rng):
    X, y = random_standardized(rng, 20, 6)
    path = cd_path(X, y, 0.5, grid_size=30)
    first = path.records[0]
    assert first.t == 0 and first.support_size == 0
    assert not first.beta.any()
    lam = np.array([r.lambda1 for r in path.records])
    assert np.all(np.diff(lam) < 0)
    assert np.all(np.diff(path.ts) >= -1e-10)
    assert len(path) == 30


def test_cd_path_one_dim_limit(tiny):
    X, y = tiny
    path = cd_path(X, y, 0.0, grid_size=100)
    # t -> |x^T y| = sqrt(2) as lambda1 -> 0; last grid point is 1e-3 lambda_max
    assert path.records[-1].t == pytest.approx(np.sqrt(2), rel=2e-3)
    assert path.records[-1].t < np.sqrt(2)


def test_cd_path_grid_size():
    with pytest.raises(ValueError):
        cd_path(np.eye(3), np.ones(3), 0.1, grid_size=1)


def test_select_dedup():
    pairs = select_path_points(fake_path([0, 1, 1, 2, 3]), 3)
    assert pairs == [(0.5, 0.1), (0.5, 0.30000000000000004), (0.5, 0.4)]


def test_select_k_larger_than_available():
    pairs = select_path_points(fake_path([0, 1, 1, 2, 3]), 10)
    assert len(pairs) == 3


def test_select_evenly_spaced():
    pairs = select_path_points(fake_path(list(range(11))), 3)
    # distinct supports 1..10 -> positions 0, 4 or 5, 9
    ts = [t for _, t in pairs]
    assert ts[0] == pytest.approx(0.1) and ts[-1] == pytest.approx(1.0)
    assert len(ts) == 3


def test_select_invalid_k():
    with pytest.raises(ValueError):
        select_path_points(fake_path([0, 1]), 0)


def test_prostate_like_supports():
    X, y = correlated_problem(97, 8, seed=0)
    path = cd_path(X, y, 1.0)
    sizes = [r.support_size for r in path.records]
    assert sizes[0] == 0
    assert max(sizes) == 8
    pairs = select_path_points(path, 40)
    assert len(pairs) <= 8
    assert len(pairs) == len({s for s in sizes if s > 0})


def test_sven_path_matches_cd(rng):
    X, y = random_standardized(rng, 40, 15)
    path = cd_path(X, y, 0.5, grid_size=40)
    pairs = select_path_points(path, 6)
    res = sven_path(X, y, pairs)
    assert len(res) == len(pairs)
    for rec in res:
        assert rec.error is None
        assert abs(np.abs(rec.beta).sum() - rec.t) <= 1e-6
        cd = next(r for r in path.records if r.t == rec.t)
        assert np.abs(rec.beta - cd.beta).max() <= 1e-3


def test_sven_path_records_errors(rng):
    X, y = random_standardized(rng, 20, 5)
    res = sven_path(X, y, [(0.5, -1.0), (0.5, 0.3)])
    assert res.records[0].error is not None
    assert np.isnan(res.records[0].beta).all()
    assert res.records[1].error is None


@pytest.mark.parametrize("lam2", [0.0, 0.1, 5.0])
def test_lambda1_for_budget(rng, lam2):
    X, y = random_standardized(rng, 30, 10)
    lam1 = 0.3 * lambda_max(X, y)
    target = cd_solve(X, y, PenalizedSpec(lam1, lam2, tol=1e-13))
    t = np.abs(target).sum()
    found, beta = lambda1_for_budget(X, y, t, lam2)
    assert found == pytest.approx(lam1, rel=1e-6)
    assert np.abs(beta - target).max() <= 1e-8


def test_path_csv_roundtrip(rng, tmp_path):
    X, y = random_standardized(rng, 15, 4)
    path = cd_path(X, y, 0.3, grid_size=10)
    f = tmp_path / "cd.csv"
    write_path_csv(path, f)
    header = f.read_text().splitlines()[0]
    assert header == "lambda1,lambda2,t,nnz,beta_1,beta_2,beta_3,beta_4"
    back = read_path_csv(f)
    np.testing.assert_array_equal(back.betas, path.betas)
    np.testing.assert_array_equal(back.ts, path.ts)
    pairs = select_path_points(path, 3)
    write_pairs_csv(pairs, tmp_path / "pairs.csv")
    assert read_pairs_csv(tmp_path / "pairs.csv") == pairs
