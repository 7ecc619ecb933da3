"""Sparse randomized Kaczmarz solvers for single and multiple measurement vectors."""

from ._core import (
    DegenerateDistributionError,
    DegenerateMetricError,
    SingularMatrixError,
    SrkError,
    ValidationError,
    ZeroRowError,
    build_weight_vector,
    classify,
    estimate_support_mmv,
    estimate_support_smv,
    generate_problem,
    is_success,
    kaczmarz_step,
    least_squares_oracle,
    relative_error,
    run_experiment,
    solve,
    weighted_kaczmarz_step,
)

__all__ = [
    "DegenerateDistributionError",
    "DegenerateMetricError",
    "SingularMatrixError",
    "SrkError",
    "ValidationError",
    "ZeroRowError",
    "build_weight_vector",
    "classify",
    "estimate_support_mmv",
    "estimate_support_smv",
    "generate_problem",
    "is_success",
    "kaczmarz_step",
    "least_squares_oracle",
    "relative_error",
    "run_experiment",
    "solve",
    "weighted_kaczmarz_step",
]
