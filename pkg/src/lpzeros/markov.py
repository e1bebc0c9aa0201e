"""Zero sensitivities and monotonicity certificates.

Each simple zero x_k of the optimal polynomial is pinned by the scalar
equation f_k = 0 where, with q_k the deflated quotient P / (x - x_k),

    f_k = integral q_k |P|^(p-1) sgn(P) d(mu_t).

The implicit function theorem then gives dx_k/dt = -(df_k/dt) / (df_k/dx_k)
with both partials available in closed form:

    df_k/dx_k = (1 - p) integral |q_k|^p |x - x_k|^(p-2) d(mu_t)  < 0
    df_k/dt   = integral q_k |P|^(p-1) sgn(P) (d omega/dt) d(nu)
                + (j' + j y' R) |P(y)|^p / (y - x_k)

where the mass line appears only for measures with a mass j(t) at y(t) and
R is a weighted sum of reciprocals of the gaps between y and the zeros.
Since df_k/dx_k < 0, the sign of dx_k/dt equals the sign of df_k/dt.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import measure as msr
from .best_approx import COINCIDENCE_TOL_SCALE, BestApproxResult, SolverConfig
from .errors import DomainError, InapplicableConditionError, StructuralError
from .polyroots import MonicPolynomial, ZeroSet


class Direction(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    INCONCLUSIVE = "inconclusive"


def _zs(zeros) -> tuple[float, ...]:
    return tuple(getattr(zeros, "zeros", zeros))


def signed_mass_gap(zeros, y: float, k: int) -> float:
    """y - x_k, replaced by the sentinel 1.0 when y sits exactly on x_k."""
    xk = _zs(zeros)[k]
    if y == xk:
        return 1.0
    return y - xk


def mass_rational_sum(zeros, y: float, k: int, p: float) -> float:
    """sum_j (p - [j == k]) / (y - x_j), skipping zeros that coincide with y.

    This is the logarithmic-derivative factor of |P(y)|^p / (y - x_k) with
    respect to y; the k-th term loses one power because of the divisor.
    """
    total = 0.0
    for j, xj in enumerate(_zs(zeros)):
        if y == xj:
            continue
        total += (p - (1.0 if j == k else 0.0)) / (y - xj)
    return total


def deflated_residual(m: msr.ParametricMeasure, t: float, P: MonicPolynomial, zeros, k: int, p: float) -> float:
    """f_k = integral q_k |P|^(p-1) sgn(P) d(mu_t); zero at the optimum."""
    zs = _zs(zeros)
    q = P.deflate(zs[k])

    def f(xs):
        pv = P(xs)
        return q(xs) * np.abs(pv) ** (p - 2.0) * pv

    return msr.integrate_mu(m, t, f, breakpoints=zs)


def residual_dzero(m: msr.ParametricMeasure, t: float, P: MonicPolynomial, zeros, k: int, p: float) -> float:
    """df_k/dx_k = (1 - p) integral |q_k|^p |x - x_k|^(p-2) d(mu_t), always < 0.

    The deflated form is finite even at p = 2 (where |x - x_k|^0 is taken as
    1 at the mass position, matching the removable limit).
    """
    zs = _zs(zeros)
    xk = zs[k]
    q = P.deflate(xk)

    def f(xs):
        return np.abs(q(xs)) ** p * np.abs(xs - xk) ** (p - 2.0)

    val = (1.0 - p) * msr.integrate_mu(m, t, f, breakpoints=zs)
    if not (val < 0):
        raise StructuralError(f"df_k/dx_k must be negative, got {val} for zero index {k}")
    return val


def residual_dzero_cross(
    m: msr.ParametricMeasure, t: float, P: MonicPolynomial, zeros, k: int, j: int, p: float
) -> float:
    """Off-diagonal df_k/dx_j = -p integral q_k q_j |P|^(p-2) d(mu_t), j != k.

    Diagnostic only; the tracked derivative dx_k/dt never needs it because
    the zero equations decouple through the deflated residuals.
    """
    zs = _zs(zeros)
    if j == k:
        raise ValueError("cross derivative requires j != k; use residual_dzero")
    qk = P.deflate(zs[k])
    qj = P.deflate(zs[j])

    def f(xs):
        return qk(xs) * qj(xs) * np.abs(P(xs)) ** (p - 2.0)

    return -p * msr.integrate_mu(m, t, f, breakpoints=zs)


def residual_dt(m: msr.ParametricMeasure, t: float, P: MonicPolynomial, zeros, k: int, p: float) -> float:
    """df_k/dt at frozen zeros: weight drift plus the moving-mass line."""
    zs = _zs(zeros)
    xk = zs[k]
    q = P.deflate(xk)

    def f(xs):
        pv = P(xs)
        return q(xs) * np.abs(pv) ** (p - 2.0) * pv

    total = msr.integrate_weight_t_derivative(m, t, f, breakpoints=zs)
    mv = msr.mass_at(m, t)
    if mv is not None:
        y = mv.position
        if y != xk:
            r = mass_rational_sum(zs, y, k, p)
            total += (mv.size_deriv + mv.size * mv.position_deriv * r) * abs(P(y)) ** p / (y - xk)
        # at exact coincidence P(y) = 0 kills the mass line (p > 1)
    return total


def fd_probe_step(m: msr.ParametricMeasure, t: float, zeros, default: float = 1e-5) -> float:
    """Central-difference step that stays accurate near a mass-zero near miss.

    The truncation of a central difference of f_k grows like (step / gap)^2
    when the mass position sits a small gap away from a zero, so the default
    step is cut to a thousandth of the smallest such gap (floored at 1e-8).
    """
    mv = msr.mass_at(m, t)
    if mv is None:
        return default
    gaps = [abs(mv.position - z) for z in _zs(zeros) if z != mv.position]
    if not gaps:
        return default
    return min(default, max(1e-8, min(gaps) / 1000.0))


def residual_dt_fd(
    m: msr.ParametricMeasure, t: float, P: MonicPolynomial, zeros, k: int, p: float, step: float = 1e-5
) -> float:
    """Central finite difference of f_k in t at frozen P and zeros."""
    up = deflated_residual(m, t + step, P, zeros, k, p)
    dn = deflated_residual(m, t - step, P, zeros, k, p)
    return (up - dn) / (2.0 * step)


def residual_dzero_fd(
    m: msr.ParametricMeasure, t: float, zeros, k: int, j: int, p: float, step: float = 1e-5
) -> float:
    """Central finite difference of f_k in the j-th zero.

    The polynomial is rebuilt as the product of linear factors at each
    displaced zero configuration, which is exactly the dependence the
    closed forms differentiate.
    """
    zs = np.asarray(_zs(zeros), dtype=float)

    def fk(xj: float) -> float:
        z2 = zs.copy()
        z2[j] = xj
        P2 = MonicPolynomial.from_zeros(z2)
        return deflated_residual(m, t, P2, tuple(z2), k, p)

    return (fk(zs[j] + step) - fk(zs[j] - step)) / (2.0 * step)


def monotonicity_condition(m: msr.ParametricMeasure, t: float, zeros, k: int, p: float) -> float:
    """Mass-driven drift rate of the k-th zero equation, sign-normalized.

        (1 / d_k) ( j'/j + y' R - (d/dt log omega)(x_k, t) )

    with d_k the signed gap to the mass.  Positive values push x_k toward
    the mass side; combined with a one-signed weight verdict this certifies
    the direction of motion.  Raises InapplicableConditionError when the
    measure has no mass point.
    """
    mv = msr.mass_at(m, t)
    if mv is None:
        raise InapplicableConditionError("monotonicity condition requires a mass point")
    zs = _zs(zeros)
    xk = zs[k]
    d = signed_mass_gap(zs, mv.position, k)
    r = mass_rational_sum(zs, mv.position, k, p)
    w, dw = msr.weight_at(m, xk, t)
    return (mv.size_deriv / mv.size + mv.position_deriv * r - dw / w) / d


@dataclass(frozen=True)
class ZeroSensitivity:
    index: int
    zero: float
    dres_dzero: float
    dres_dt: float
    dzero_dt: float
    condition_value: float | None
    near_mass_coincidence: bool
    direction: Direction

    @property
    def theorem_applies(self) -> bool:
        """True when the sufficient monotonicity condition certifies a direction."""
        return self.direction is not Direction.INCONCLUSIVE


@dataclass(frozen=True)
class MarkovReport:
    t: float
    p: float
    weight_verdict: msr.Monotonicity
    entries: tuple[ZeroSensitivity, ...]

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "p": self.p,
            "weight_verdict": self.weight_verdict.value,
            "zeros": [e.zero for e in self.entries],
            "entries": [
                {
                    "index": e.index,
                    "zero": e.zero,
                    "dres_dzero": e.dres_dzero,
                    "dres_dt": e.dres_dt,
                    "dzero_dt": e.dzero_dt,
                    "condition_value": e.condition_value,
                    "near_mass_coincidence": e.near_mass_coincidence,
                    "direction": e.direction.value,
                    "theorem_applies": e.theorem_applies,
                }
                for e in self.entries
            ],
        }


def _predict(cond: float | None, verdict: msr.Monotonicity) -> Direction:
    inc = verdict is msr.Monotonicity.INCREASING
    dec = verdict is msr.Monotonicity.DECREASING
    const = verdict is msr.Monotonicity.CONSTANT
    if cond is None:
        if inc:
            return Direction.INCREASING
        if dec:
            return Direction.DECREASING
        return Direction.INCONCLUSIVE
    if cond >= 0 and (inc or const) and not (cond == 0 and const):
        return Direction.INCREASING
    if cond <= 0 and (dec or const) and not (cond == 0 and const):
        return Direction.DECREASING
    return Direction.INCONCLUSIVE


def zero_derivatives(
    m: msr.ParametricMeasure, t: float, result: BestApproxResult, cfg: SolverConfig
) -> MarkovReport:
    """Full sensitivity report for a converged solve at parameter t."""
    scale = max(1.0, result.norm ** (cfg.p - 1.0))
    if not (result.optimality_residual <= cfg.residual_tol * scale):
        raise StructuralError(
            f"sensitivities need a converged solve: residual {result.optimality_residual:.3e}"
        )
    P = result.polynomial
    zeros = result.zeros
    verdict = msr.log_weight_monotonicity(m, t)
    mv = msr.mass_at(m, t)
    lo, hi = zeros.hull
    co_tol = cfg.coincidence_tol
    if co_tol is None:
        co_tol = COINCIDENCE_TOL_SCALE * (hi - lo)

    entries = []
    for k, xk in enumerate(zeros.zeros):
        da = residual_dzero(m, t, P, zeros, k, cfg.p)
        dt_ = residual_dt(m, t, P, zeros, k, cfg.p)
        dz = -dt_ / da
        cond: float | None = None
        near = False
        if mv is not None:
            near = any(z != mv.position and abs(z - mv.position) <= co_tol for z in zeros.zeros)
            try:
                cond = monotonicity_condition(m, t, zeros, k, cfg.p)
            except DomainError:
                cond = None  # weight not evaluable at this zero, no certificate
        entries.append(
            ZeroSensitivity(k, xk, da, dt_, dz, cond, near, _predict(cond, verdict)))
    return MarkovReport(t, cfg.p, verdict, tuple(entries))
