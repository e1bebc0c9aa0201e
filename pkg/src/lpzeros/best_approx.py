"""Minimal L^p monic polynomial solver with optimality certificates.

For p >= 2 and a measure mu_t with at least n + 2 points of increase, the
monic polynomial of degree n + 1 minimizing the L^p(mu_t) norm exists and is
unique.  Writing P = x^(n+1) - g with g of degree <= n, optimality is the
orthogonality of all lower monomials to |P|^(p-1) sgn P:

    integral of x^i |P|^(p-1) sgn(P) d(mu_t) = 0   for i = 0..n.

The solver computes the p = 2 minimizer from a Hankel moment system, then
walks p upward by damped Newton steps on the smooth convex objective
integral |P|^p d(mu_t), refreshing quadrature breakpoints at the current
zero estimates each iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import measure as msr
from ._kernels import lp_moment_sums
from .errors import ConfigError, ConvergenceError
from .polyroots import MonicPolynomial, ZeroSet, approximate_real_zeros, find_real_zeros

COINCIDENCE_TOL_SCALE = 1e-12
_ARMIJO = 1e-4
_MAX_BACKTRACKS = 40
_STALL_LIMIT = 8
_POLISH_FACTOR = 1e-4


@dataclass(frozen=True)
class SolverConfig:
    n: int
    p: float
    residual_tol: float = 1e-10
    max_newton_iters: int = 200
    continuation_step: float = 1.0
    levenberg_floor: float = 1e-12
    simplicity_tol: float | None = None
    hull_tol: float | None = None
    coincidence_tol: float | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ConfigError(f"n must be >= 0, got {self.n}")
        if not (self.p >= 2):
            raise ConfigError(f"p must be >= 2, got {self.p}")
        for name in ("residual_tol", "continuation_step", "levenberg_floor"):
            v = getattr(self, name)
            if not (v > 0):
                raise ConfigError(f"{name} must be positive, got {v}")
        if self.max_newton_iters < 1:
            raise ConfigError(f"max_newton_iters must be >= 1, got {self.max_newton_iters}")
        for name in ("simplicity_tol", "hull_tol", "coincidence_tol"):
            v = getattr(self, name)
            if v is not None and not (v > 0):
                raise ConfigError(f"{name} must be positive when given, got {v}")


@dataclass(frozen=True)
class BestApproxResult:
    polynomial: MonicPolynomial
    zeros: ZeroSet
    optimality_residual: float
    norm: float
    iterations: int
    p: float


def _breakpoints(m: msr.ParametricMeasure, t: float, P: MonicPolynomial) -> list[float]:
    lo, hi = msr.support_hull(m, t)
    return approximate_real_zeros(P, lo, hi, doublings=1)


def objective(m: msr.ParametricMeasure, t: float, P: MonicPolynomial, p: float) -> float:
    """integral |P|^p d(mu_t), with breakpoints at the current zero estimates."""
    nodes, w = msr.lp_nodes(m, t, _breakpoints(m, t, P))
    value, _, _ = lp_moment_sums(nodes, w, P.low_coeffs, p, 0, 0)
    return value


def objective_derivatives(
    m: msr.ParametricMeasure, t: float, P: MonicPolynomial, p: float
) -> tuple[float, np.ndarray, np.ndarray]:
    """Objective with gradient and Hessian in the subtracted coefficients.

    With P = x^(n+1) - sum_i c_i x^i the objective F(c) = integral |P|^p has

        dF/dc_i     = -p integral x^i |P|^(p-1) sgn(P) d(mu_t)
        d2F/dc_idc_j = p (p-1) integral x^(i+j) |P|^(p-2) d(mu_t)

    so the Hessian is a Hankel matrix built from one moment vector.
    """
    d = P.degree
    nodes, w = msr.lp_nodes(m, t, _breakpoints(m, t, P))
    value, gvec, mvec = lp_moment_sums(nodes, w, P.low_coeffs, p, d, 2 * d - 1)
    grad = -p * gvec
    hess = p * (p - 1.0) * mvec[np.add.outer(np.arange(d), np.arange(d))]
    return value, grad, hess


def optimality_residual(m: msr.ParametricMeasure, t: float, P: MonicPolynomial, p: float) -> float:
    """max_i |integral x^i |P|^(p-1) sgn(P) d(mu_t)| over i = 0..degree-1."""
    nodes, w = msr.lp_nodes(m, t, _breakpoints(m, t, P))
    _, gvec, _ = lp_moment_sums(nodes, w, P.low_coeffs, p, P.degree, 0)
    return float(np.max(np.abs(gvec))) if gvec.size else 0.0


def _residual_scale(value: float, p: float) -> float:
    # residual entries scale like norm^(p-1); value is norm^p
    return max(1.0, value ** ((p - 1.0) / p))


def _moment_solve(m: msr.ParametricMeasure, t: float, n: int) -> MonicPolynomial:
    """Exact p = 2 minimizer from the Hankel system of raw moments."""
    mom = msr.raw_moments(m, t, 2 * n + 2)
    H = mom[np.add.outer(np.arange(n + 1), np.arange(n + 1))]
    rhs = mom[n + 1 : 2 * n + 2]
    c = np.linalg.solve(H, rhs)
    return MonicPolynomial(tuple(-c))


def _solve_regularized(hess: np.ndarray, rhs: np.ndarray, floor: float) -> np.ndarray:
    """Solve hess x = rhs by Cholesky with a Levenberg shift when needed."""
    eye = np.eye(hess.shape[0])
    lam = 0.0
    for _ in range(16):
        try:
            L = np.linalg.cholesky(hess + lam * eye)
        except np.linalg.LinAlgError:
            lam = floor if lam == 0.0 else lam * 10.0
            continue
        if lam == 0.0 and float(np.min(np.diag(L)) ** 2) < floor:
            lam = floor
            continue
        z = np.linalg.solve(L, rhs)
        return np.linalg.solve(L.T, z)
    raise ConvergenceError("hessian could not be regularized to positive definite")


def _newton_stage(
    m: msr.ParametricMeasure,
    t: float,
    start: MonicPolynomial,
    p: float,
    cfg: SolverConfig,
) -> tuple[MonicPolynomial, int]:
    """Damped Newton on the fixed-p objective from a starting polynomial."""
    c = -np.asarray(start.low_coeffs)
    d = start.degree
    best_res = np.inf
    stall = 0
    # once the certificate tolerance is met, keep polishing toward _POLISH_FACTOR
    # below it (a step or two at quadratic convergence) so downstream finite
    # differences of tracked zeros are not limited by solver exit noise
    met: MonicPolynomial | None = None
    met_res = np.inf
    met_it = 0
    for it in range(cfg.max_newton_iters):
        P = MonicPolynomial(tuple(-c))
        # freeze the quadrature rule for the whole iteration: the line search
        # then acts on one consistent convex discrete objective, immune to the
        # evaluation noise of breakpoint refreshes between rules
        nodes, w = msr.lp_nodes(m, t, _breakpoints(m, t, P))
        value, gvec, mvec = lp_moment_sums(nodes, w, P.low_coeffs, p, d, 2 * d - 1)
        grad = -p * gvec
        hess = p * (p - 1.0) * mvec[np.add.outer(np.arange(d), np.arange(d))]
        res = float(np.max(np.abs(gvec)))
        target = cfg.residual_tol * _residual_scale(value, p)
        if res <= target:
            if res < met_res:
                met, met_res, met_it = P, res, it
            if res <= target * _POLISH_FACTOR:
                return P, it
        if res >= 0.99 * best_res:
            stall += 1
            if stall >= _STALL_LIMIT:
                if met is not None:
                    return met, met_it
                raise ConvergenceError(
                    f"residual stalled at {res:.3e} against tolerance {target:.3e} (p={p})"
                )
        else:
            stall = 0
        best_res = min(best_res, res)

        step = _solve_regularized(hess, -grad, cfg.levenberg_floor)
        slope = float(grad @ step)
        if abs(slope) <= 64.0 * np.finfo(float).eps * abs(value):
            # the predicted decrease is below the objective's ulp, so the
            # backtracking test is pure noise; plain Newton is safe this close
            c = c + step
            continue
        alpha = 1.0
        c_try = c + step
        for _ in range(_MAX_BACKTRACKS):
            c_try = c + alpha * step
            v_try, _, _ = lp_moment_sums(nodes, w, tuple(-c_try), p, 0, 0)
            if v_try <= value + _ARMIJO * alpha * slope:
                break
            alpha *= 0.5
        c = c_try
    if met is not None:
        return met, met_it
    raise ConvergenceError(f"no convergence in {cfg.max_newton_iters} newton iterations (p={p})")


def _continuation_targets(p: float, step: float) -> list[float]:
    targets = []
    pk = 2.0
    while pk < p - 1e-12:
        pk = min(pk + step, p)
        targets.append(pk)
    return targets


def solve(
    m: msr.ParametricMeasure,
    t: float,
    cfg: SolverConfig,
    warm_start: MonicPolynomial | None = None,
) -> BestApproxResult:
    """Compute the minimal L^p monic polynomial of degree n + 1 for mu_t.

    ``warm_start`` tries a direct Newton solve at the target p from the
    given polynomial and silently falls back to the p-continuation path from
    the exact p = 2 solution if that fails to converge.
    """
    msr.check_t(m, t)
    needed = cfg.n + 2
    count = msr.distinct_support_count(m, t)
    if count < needed:
        raise ConfigError(
            f"measure must have at least {needed} points of increase for n={cfg.n}, got {count}"
        )

    iterations = 0
    P: MonicPolynomial | None = None
    if warm_start is not None and warm_start.degree == cfg.n + 1 and cfg.p > 2:
        try:
            P, iterations = _newton_stage(m, t, warm_start, cfg.p, cfg)
        except ConvergenceError:
            P = None
    if P is None:
        P = _moment_solve(m, t, cfg.n)
        iterations = 0
        for pk in _continuation_targets(cfg.p, cfg.continuation_step):
            P, its = _newton_stage(m, t, P, pk, cfg)
            iterations += its

    value = objective(m, t, P, cfg.p)
    residual = optimality_residual(m, t, P, cfg.p)
    scale = _residual_scale(value, cfg.p)
    if not (residual <= cfg.residual_tol * scale):
        raise ConvergenceError(
            f"optimality residual {residual:.3e} exceeds tolerance {cfg.residual_tol * scale:.3e}"
        )
    zeros = find_real_zeros(P, msr.support_hull(m, t), cfg.simplicity_tol, cfg.hull_tol)
    return BestApproxResult(P, zeros, residual, value ** (1.0 / cfg.p), iterations, cfg.p)
