"""Minimal L^p monic polynomials over parametric measures.

Compute the monic polynomial of least L^p norm against a weighted measure
with an optional moving mass point, certify its zeros, differentiate them
in the measure parameter, and test monotonicity certificates.
"""

from ._kernels import BACKEND
from .best_approx import (
    BestApproxResult,
    SolverConfig,
    objective,
    objective_derivatives,
    optimality_residual,
    solve,
)
from .config import Problem, load_problem, parse_problem
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    InapplicableConditionError,
    LpzerosError,
    NumericError,
    StructuralError,
)
from .markov import (
    Direction,
    MarkovReport,
    ZeroSensitivity,
    deflated_residual,
    mass_rational_sum,
    monotonicity_condition,
    residual_dt,
    residual_dzero,
    residual_dzero_cross,
    signed_mass_gap,
    zero_derivatives,
)
from .measure import (
    AffineScalar,
    ConstantScalar,
    ConstantWeight,
    ExponentialScalar,
    ExponentialWeight,
    JacobiVaryAlpha,
    JacobiVaryBeta,
    Monotonicity,
    ParametricMeasure,
    integrate_mu,
    log_weight_monotonicity,
    mass_at,
    support_hull,
    weight_at,
)
from .polyroots import MonicPolynomial, ZeroSet, find_real_zeros
from .quadrature import AbsolutelyContinuous, Discrete, QuadratureRule, build_rule, integrate
from .sweep import SweepRecord, SweepSpec, run_sweep, run_validation, zero_derivative_fd

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "AbsolutelyContinuous",
    "AffineScalar",
    "BestApproxResult",
    "ConfigError",
    "ConstantScalar",
    "ConstantWeight",
    "ConvergenceError",
    "Direction",
    "Discrete",
    "DomainError",
    "ExponentialScalar",
    "ExponentialWeight",
    "InapplicableConditionError",
    "JacobiVaryAlpha",
    "JacobiVaryBeta",
    "LpzerosError",
    "MarkovReport",
    "MonicPolynomial",
    "Monotonicity",
    "NumericError",
    "ParametricMeasure",
    "Problem",
    "QuadratureRule",
    "SolverConfig",
    "StructuralError",
    "SweepRecord",
    "SweepSpec",
    "ZeroSensitivity",
    "ZeroSet",
    "build_rule",
    "deflated_residual",
    "find_real_zeros",
    "integrate",
    "integrate_mu",
    "load_problem",
    "log_weight_monotonicity",
    "mass_at",
    "mass_rational_sum",
    "monotonicity_condition",
    "objective",
    "objective_derivatives",
    "optimality_residual",
    "parse_problem",
    "residual_dt",
    "residual_dzero",
    "residual_dzero_cross",
    "run_sweep",
    "run_validation",
    "signed_mass_gap",
    "solve",
    "support_hull",
    "weight_at",
    "zero_derivative_fd",
    "zero_derivatives",
]
