"""Elastic Net and Lasso by reduction to a squared-hinge linear SVM."""

from .cd import PenalizedSpec, cd_solve, lambda_max, soft_threshold
from .dataset import (
    RegressionProblem,
    StandardizationRecord,
    load_dense_csv,
    load_libsvm,
    standardize,
    write_libsvm,
)
from .errors import (
    DegenerateInputError,
    DegenerateSolutionError,
    DimensionError,
    NonConvergenceError,
    ParseError,
    SvenError,
)
from .path import PathResult, cd_path, lambda1_for_budget, select_path_points, sven_path
from .reduction import ElasticNetSolution, build_svm_instance, recover_beta, sven_solve
from .svm import SolverConfig, SvmInstance, solve_dual, solve_primal

__version__ = "0.1.0"
