"""Loading, validating and standardizing regression data."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateInputError, DimensionError, ParseError

__all__ = [
    "RegressionProblem",
    "StandardizationRecord",
    "load_dense_csv",
    "load_libsvm",
    "write_libsvm",
    "standardize",
]


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RegressionProblem:
    """Dense design matrix ``X`` (n x p) with response ``y`` (n,).

    Arrays are copied and made read-only on construction.
    """

    X: np.ndarray
    y: np.ndarray
    feature_names: Optional[tuple] = None

    def __post_init__(self):
        X = _frozen(self.X)
        y = _frozen(self.y).ravel()
        if X.ndim != 2:
            raise DimensionError(f"X must be 2-D, got shape {X.shape}")
        n, p = X.shape
        if n < 2:
            raise DimensionError(f"need at least 2 samples, got {n}")
        if p < 1:
            raise DimensionError("need at least one feature")
        if y.shape[0] != n:
            raise DimensionError(f"X has {n} rows but y has {y.shape[0]} entries")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite values")
        if not np.all(np.isfinite(y)):
            raise ValueError("y contains non-finite values")
        names = self.feature_names
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != p:
                raise DimensionError(f"{len(names)} feature names for {p} columns")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "feature_names", names)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]


@dataclass(frozen=True)
class StandardizationRecord:
    """Everything needed to undo :func:`standardize`.

    ``col_means`` and ``col_scales`` cover all original columns; dropped
    (zero-variance) columns have scale 0 and are listed in ``dropped``.
    """

    y_mean: float
    col_means: np.ndarray
    col_scales: np.ndarray
    dropped: tuple = field(default_factory=tuple)

    @property
    def kept(self):
        mask = np.ones(len(self.col_means), dtype=bool)
        mask[list(self.dropped)] = False
        return np.flatnonzero(mask)

    def coef_to_original(self, beta):
        """Map standardized coefficients to original units.

        Returns ``(coef, intercept)`` where ``coef`` has one entry per
        original column (zero for dropped columns).
        """
        beta = np.asarray(beta, dtype=float)
        kept = self.kept
        if beta.shape != (len(kept),):
            raise DimensionError(f"expected {len(kept)} coefficients, got {beta.shape}")
        coef = np.zeros(len(self.col_means))
        coef[kept] = beta / self.col_scales[kept]
        intercept = self.y_mean - float(self.col_means @ coef)
        return coef, intercept

    def unstandardize(self, problem):
        """Reconstruct the original problem from a standardized one."""
        kept = self.kept
        n = problem.n
        X = np.tile(self.col_means, (n, 1))
        X[:, kept] = problem.X * self.col_scales[kept] + self.col_means[kept]
        return RegressionProblem(X, problem.y + self.y_mean)


def load_dense_csv(path, has_header=False):
    """Read a comma-separated file whose first column is the response."""
    path = Path(path)
    names = None
    rows = []
    width = None
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for lineno, raw in enumerate(reader, start=1):
            if not raw or all(not cell.strip() for cell in raw):
                continue
            if has_header and names is None:
                names = [c.strip() for c in raw[1:]]
                width = len(raw)
                continue
            if width is None:
                width = len(raw)
            if len(raw) != width:
                raise ParseError(
                    f"expected {width} columns, found {len(raw)}", row=lineno
                )
            try:
                rows.append([float(cell) for cell in raw])
            except ValueError:
                for col, cell in enumerate(raw, start=1):
                    try:
                        float(cell)
                    except ValueError:
                        raise ParseError(
                            f"non-numeric cell {cell!r}", row=lineno, column=col
                        ) from None
                raise
    if width is not None and width < 2:
        raise ParseError("need a response column and at least one feature column")
    if len(rows) < 2:
        raise DimensionError(f"need at least 2 data rows, got {len(rows)}")
    data = np.array(rows, dtype=float)
    return RegressionProblem(data[:, 1:], data[:, 0], feature_names=names)


def load_libsvm(path, dim_hint=None):
    """Read a libsvm/svmlight file into a dense problem.

    Indices are 1-based and must be strictly increasing on each line.
    """
    labels = []
    entries = []
    p = int(dim_hint or 0)
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                labels.append(float(tokens[0]))
            except ValueError:
                raise ParseError(f"bad label {tokens[0]!r}", row=lineno) from None
            row = []
            last = 0
            for col, tok in enumerate(tokens[1:], start=2):
                idx_s, sep, val_s = tok.partition(":")
                try:
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError:
                    raise ParseError(f"bad entry {tok!r}", row=lineno, column=col) from None
                if not sep:
                    raise ParseError(f"bad entry {tok!r}", row=lineno, column=col)
                if idx <= 0:
                    raise ParseError(f"index {idx} is not positive", row=lineno, column=col)
                if idx <= last:
                    raise ParseError(
                        f"index {idx} not greater than previous {last}",
                        row=lineno,
                        column=col,
                    )
                last = idx
                row.append((idx - 1, val))
            p = max(p, last)
            entries.append(row)
    if len(labels) < 2:
        raise DimensionError(f"need at least 2 samples, got {len(labels)}")
    X = np.zeros((len(labels), max(p, 1)))
    for i, row in enumerate(entries):
        for j, v in row:
            X[i, j] = v
    return RegressionProblem(X, np.array(labels))


def write_libsvm(problem, path):
    """Write ``problem`` in libsvm format (zeros omitted, 17 significant digits)."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for xi, yi in zip(problem.X, problem.y):
            feats = " ".join(
                f"{j + 1}:{v:.17g}" for j, v in enumerate(xi) if v != 0.0
            )
            fh.write(f"{yi:.17g} {feats}".rstrip() + "\n")


def standardize(problem):
    """Center ``y`` and give every feature column mean 0 and unit L2 norm.

    Constant columns are dropped and listed in the returned record.
    """
    X = problem.X
    y_mean = float(problem.y.mean())
    col_means = X.mean(axis=0)
    Xc = X - col_means
    scales = np.linalg.norm(Xc, axis=0)
    # a constant column leaves only rounding noise after centering
    floor = 8 * np.finfo(float).eps * np.sqrt(problem.n) * np.maximum(1.0, np.abs(col_means))
    dead = scales <= floor
    if dead.all():
        raise DegenerateInputError("every feature column is constant")
    scales = np.where(dead, 0.0, scales)
    kept = np.flatnonzero(~dead)
    Xs = Xc[:, kept] / scales[kept]
    names = problem.feature_names
    if names is not None:
        names = tuple(names[j] for j in kept)
    record = StandardizationRecord(
        y_mean=y_mean,
        col_means=_frozen(col_means),
        col_scales=_frozen(scales),
        dropped=tuple(int(j) for j in np.flatnonzero(dead)),
    )
    return RegressionProblem(Xs, problem.y - y_mean, feature_names=names), record
