"""Exception types raised by the solvers and loaders."""

from __future__ import annotations


class SvenError(Exception):
    """Base class for all package errors."""


class ParseError(SvenError, ValueError):
    """Malformed input file. ``row`` and ``column`` are 1-based when known."""

    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class DimensionError(SvenError, ValueError):
    pass


class DegenerateInputError(SvenError, ValueError):
    pass


class DegenerateSolutionError(SvenError, ArithmeticError):
    """The SVM selected no support vectors, so sum(alpha) == 0."""


class NonConvergenceError(SvenError, RuntimeError):
    """An iterative solver hit its iteration cap.

    The last iterate and its optimality measure are attached so callers can
    inspect or warm-start from them.
    """

    def __init__(self, message, last_iterate=None, residual=None, iterations=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations
