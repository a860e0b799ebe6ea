import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from sven.dataset import (
    RegressionProblem,
    load_dense_csv,
    load_libsvm,
    standardize,
    write_libsvm,
)
from sven.errors import DegenerateInputError, DimensionError, ParseError


def test_csv_no_header(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("3,2\n1,0\n")
    prob = load_dense_csv(f)
    np.testing.assert_array_equal(prob.y, [3, 1])
    np.testing.assert_array_equal(prob.X, [[2], [0]])
    assert (prob.n, prob.p) == (2, 1)
    assert prob.feature_names is None


def test_csv_header(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("y,f1\n3,2\n1,0\n")
    prob = load_dense_csv(f, has_header=True)
    np.testing.assert_array_equal(prob.X, [[2], [0]])
    assert prob.feature_names == ("f1",)


def test_csv_97_by_9(tmp_path, rng):
    data = rng.standard_normal((97, 9))
    f = tmp_path / "p.csv"
    np.savetxt(f, data, delimiter=",")
    prob = load_dense_csv(f)
    assert (prob.n, prob.p) == (97, 8)


@pytest.mark.parametrize(
    "text, row, col",
    [("1,2\n3\n", 2, None), ("1,2\n3,x\n", 2, 2)],
)
def test_csv_parse_errors(tmp_path, text, row, col):
    f = tmp_path / "bad.csv"
    f.write_text(text)
    with pytest.raises(ParseError) as info:
        load_dense_csv(f)
    assert info.value.row == row
    assert info.value.column == col


def test_csv_too_few_rows(tmp_path):
    f = tmp_path / "one.csv"
    f.write_text("1,2\n")
    with pytest.raises(DimensionError):
        load_dense_csv(f)


def test_libsvm_basic(tmp_path):
    f = tmp_path / "a.svm"
    f.write_text("1.5 1:0.5 3:2.0\n-2 \n")
    prob = load_libsvm(f)
    np.testing.assert_array_equal(prob.y, [1.5, -2])
    np.testing.assert_array_equal(prob.X, [[0.5, 0, 2.0], [0, 0, 0]])


def test_libsvm_dim_hint(tmp_path):
    f = tmp_path / "a.svm"
    f.write_text("-2 \n1 1:1\n")
    prob = load_libsvm(f, dim_hint=2)
    np.testing.assert_array_equal(prob.X, [[0, 0], [1, 0]])


def test_libsvm_placement(tmp_path):
    f = tmp_path / "a.svm"
    f.write_text("1 2:1\n-1 1:1\n")
    prob = load_libsvm(f)
    np.testing.assert_array_equal(prob.X, [[0, 1], [1, 0]])
    np.testing.assert_array_equal(prob.y, [1, -1])


@pytest.mark.parametrize("line", ["1 2:1 2:3", "1 3:1 2:3", "1 0:1", "1 -1:2"])
def test_libsvm_bad_indices(tmp_path, line):
    f = tmp_path / "a.svm"
    f.write_text(line + "\n1 1:1\n")
    with pytest.raises(ParseError):
        load_libsvm(f)


def test_libsvm_roundtrip(tmp_path, rng):
    X = rng.standard_normal((6, 5))
    X[X < 0.3] = 0.0
    prob = RegressionProblem(X, rng.standard_normal(6))
    f = tmp_path / "r.svm"
    write_libsvm(prob, f)
    back = load_libsvm(f, dim_hint=5)
    np.testing.assert_array_equal(back.X, prob.X)
    np.testing.assert_array_equal(back.y, prob.y)


def test_problem_validation():
    with pytest.raises(DimensionError):
        RegressionProblem(np.ones((1, 2)), [1.0])
    with pytest.raises(ValueError):
        RegressionProblem([[1.0], [np.nan]], [1.0, 2.0])
    with pytest.raises(DimensionError):
        RegressionProblem([[1.0], [2.0]], [1.0, 2.0, 3.0])
    prob = RegressionProblem([[1.0], [2.0]], [1.0, 2.0])
    with pytest.raises(ValueError):
        prob.X[0, 0] = 5.0


def test_standardize_hand_example():
    prob, rec = standardize(RegressionProblem([[2.0], [0.0]], [3.0, 1.0]))
    np.testing.assert_allclose(prob.X[:, 0], [0.70711, -0.70711], atol=1e-5)
    np.testing.assert_allclose(prob.y, [1, -1])
    assert rec.y_mean == 2
    assert rec.col_means[0] == 1
    assert rec.col_scales[0] == pytest.approx(np.sqrt(2))


def test_standardize_fixed_point(rng):
    prob, _ = standardize(RegressionProblem(rng.standard_normal((10, 3)), rng.standard_normal(10)))
    again, rec = standardize(prob)
    np.testing.assert_allclose(again.X, prob.X, atol=1e-12)
    np.testing.assert_allclose(again.y, prob.y, atol=1e-12)
    np.testing.assert_allclose(rec.col_scales, 1.0, atol=1e-12)


def test_standardize_drops_constant_column(rng):
    X = rng.standard_normal((8, 3))
    X[:, 1] = 4.2
    prob, rec = standardize(RegressionProblem(X, rng.standard_normal(8)))
    assert prob.p == 2
    assert rec.dropped == (1,)
    coef, _ = rec.coef_to_original(np.array([1.0, 2.0]))
    assert coef[1] == 0.0


def test_standardize_all_constant():
    with pytest.raises(DegenerateInputError):
        standardize(RegressionProblem(np.ones((4, 2)), [1.0, 2.0, 3.0, 4.0]))


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(
    arrays(np.float64, st.tuples(st.integers(3, 12), st.integers(1, 5)), elements=finite),
    st.data(),
)
def test_standardize_properties(X, data):
    y = data.draw(arrays(np.float64, X.shape[0], elements=finite))
    try:
        prob, rec = standardize(RegressionProblem(X, y))
    except DegenerateInputError:
        return
    assert abs(prob.y.mean()) <= 1e-12 * max(1.0, np.abs(y).max())
    np.testing.assert_allclose(prob.X.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(prob.X, axis=0), 1.0, atol=1e-12)
    back = rec.unstandardize(prob)
    scale = max(1.0, np.abs(X).max())
    np.testing.assert_allclose(back.X, X, rtol=0, atol=1e-12 * scale)
    np.testing.assert_allclose(back.y, y, rtol=0, atol=1e-12 * max(1.0, np.abs(y).max()))


def test_coef_to_original_predicts_same(rng):
    X = rng.standard_normal((12, 3)) * [1, 10, 0.1] + [5, -2, 0]
    y = rng.standard_normal(12)
    prob, rec = standardize(RegressionProblem(X, y))
    beta = rng.standard_normal(3)
    coef, b0 = rec.coef_to_original(beta)
    np.testing.assert_allclose(X @ coef + b0, prob.X @ beta + rec.y_mean, atol=1e-12)
