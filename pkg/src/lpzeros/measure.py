"""Parametric measures: a weighted base measure plus an optional moving mass.

A measure here is  d(mu_t)(x) = omega(x, t) d(nu)(x) + j(t) delta_{y(t)}
with nu a fixed base measure (interval Lebesgue or finite atoms), omega a
positive differentiable weight family, and an optional positive point mass
of size j(t) at position y(t).  The parameter t ranges over an open
interval.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import ConfigError, DomainError, InapplicableConditionError, NumericError
from .quadrature import (
    AbsolutelyContinuous,
    BaseMeasure,
    Discrete,
    QuadratureRule,
    build_rule,
    integrate,
)


class Monotonicity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    NON_MONOTONE = "non_monotone"


# --------------------------------------------------------------------------
# weight families: omega(x, t) > 0 with an analytic t-derivative


class ConstantWeight:
    """omega(x, t) = 1."""

    label = "constant"

    def check_x(self, x) -> None:
        pass

    def value(self, x, t):
        return np.ones_like(np.asarray(x, dtype=float))

    def t_derivative(self, x, t):
        return np.zeros_like(np.asarray(x, dtype=float))

    def log_t_derivative_monotonicity(self) -> Monotonicity:
        # d/dt log omega = 0, constant in x
        return Monotonicity.CONSTANT


class ExponentialWeight:
    """omega(x, t) = exp(t x); log-derivative in t is x, increasing."""

    label = "exponential"

    def check_x(self, x) -> None:
        pass

    def value(self, x, t):
        return np.exp(t * np.asarray(x, dtype=float))

    def t_derivative(self, x, t):
        xs = np.asarray(x, dtype=float)
        return xs * np.exp(t * xs)

    def log_t_derivative_monotonicity(self) -> Monotonicity:
        return Monotonicity.INCREASING


@dataclass(frozen=True)
class JacobiVaryAlpha:
    """omega(x, t) = (1-x)^t (1+x)^beta on supports inside (-1, 1).

    d/dt log omega = log(1-x), strictly decreasing in x.
    """

    beta: float

    label = "jacobi_vary_alpha"

    def __post_init__(self):
        if not (np.isfinite(self.beta) and self.beta > -1):
            raise ConfigError(f"beta must be > -1, got {self.beta}")

    def check_x(self, x) -> None:
        xs = np.asarray(x, dtype=float)
        if np.any(np.abs(xs) >= 1):
            raise DomainError("jacobi weight requires |x| < 1")

    def value(self, x, t):
        xs = np.asarray(x, dtype=float)
        return (1.0 - xs) ** t * (1.0 + xs) ** self.beta

    def t_derivative(self, x, t):
        xs = np.asarray(x, dtype=float)
        return np.log(1.0 - xs) * self.value(xs, t)

    def log_t_derivative_monotonicity(self) -> Monotonicity:
        return Monotonicity.DECREASING


@dataclass(frozen=True)
class JacobiVaryBeta:
    """omega(x, t) = (1-x)^alpha (1+x)^t on supports inside (-1, 1).

    d/dt log omega = log(1+x), strictly increasing in x.
    """

    alpha: float

    label = "jacobi_vary_beta"

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > -1):
            raise ConfigError(f"alpha must be > -1, got {self.alpha}")

    def check_x(self, x) -> None:
        xs = np.asarray(x, dtype=float)
        if np.any(np.abs(xs) >= 1):
            raise DomainError("jacobi weight requires |x| < 1")

    def value(self, x, t):
        xs = np.asarray(x, dtype=float)
        return (1.0 - xs) ** self.alpha * (1.0 + xs) ** t

    def t_derivative(self, x, t):
        xs = np.asarray(x, dtype=float)
        return np.log(1.0 + xs) * self.value(xs, t)

    def log_t_derivative_monotonicity(self) -> Monotonicity:
        return Monotonicity.INCREASING


WeightFamily = ConstantWeight | ExponentialWeight | JacobiVaryAlpha | JacobiVaryBeta


# --------------------------------------------------------------------------
# scalar families for the mass size j(t) and position y(t)


@dataclass(frozen=True)
class ConstantScalar:
    value: float

    def value_at(self, t: float) -> float:
        return self.value

    def derivative_at(self, t: float) -> float:
        return 0.0


@dataclass(frozen=True)
class AffineScalar:
    intercept: float
    slope: float

    def value_at(self, t: float) -> float:
        return self.intercept + self.slope * t

    def derivative_at(self, t: float) -> float:
        return self.slope


@dataclass(frozen=True)
class ExponentialScalar:
    scale: float
    rate: float

    def value_at(self, t: float) -> float:
        return self.scale * math.exp(self.rate * t)

    def derivative_at(self, t: float) -> float:
        return self.rate * self.value_at(t)


ScalarFamily = ConstantScalar | AffineScalar | ExponentialScalar


class MassValues(NamedTuple):
    size: float
    size_deriv: float
    position: float
    position_deriv: float


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametricMeasure:
    base: BaseMeasure
    weight: WeightFamily
    t_domain: tuple[float, float]
    mass_size: ScalarFamily | None = None
    mass_position: ScalarFamily | None = None

    def __post_init__(self):
        lo, hi = self.t_domain
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ConfigError(f"t_domain must be a nonempty open interval, got {self.t_domain}")
        if (self.mass_size is None) != (self.mass_position is None):
            raise ConfigError("mass_size and mass_position must be given together")

    @property
    def has_mass(self) -> bool:
        return self.mass_size is not None


def check_t(m: ParametricMeasure, t: float) -> None:
    lo, hi = m.t_domain
    if not (lo < t < hi):
        raise DomainError(f"t={t} outside the parameter domain ({lo}, {hi})")


def support(m: ParametricMeasure) -> tuple[float, float]:
    """Endpoints of the base measure support (atom span for discrete)."""
    if isinstance(m.base, Discrete):
        return m.base.atoms[0][0], m.base.atoms[-1][0]
    return m.base.a, m.base.b


def support_hull(m: ParametricMeasure, t: float) -> tuple[float, float]:
    """Convex hull of the support of mu_t, mass position included."""
    a, b = support(m)
    if m.has_mass:
        y = mass_at(m, t).position
        return min(a, y), max(b, y)
    return a, b


def distinct_support_count(m: ParametricMeasure, t: float) -> float:
    """Number of distinct points carrying mass; inf for a continuous base."""
    if isinstance(m.base, AbsolutelyContinuous):
        return math.inf
    n = len(m.base.atoms)
    if m.has_mass:
        y = mass_at(m, t).position
        if all(x != y for x, _ in m.base.atoms):
            n += 1
    return n


def mass_at(m: ParametricMeasure, t: float) -> MassValues | None:
    """Mass size, position, and their t-derivatives; None without a mass."""
    check_t(m, t)
    if not m.has_mass:
        return None
    j = m.mass_size.value_at(t)
    if not (j > 0):
        raise ConfigError(f"mass size must stay positive on the parameter domain, got j({t})={j}")
    return MassValues(j, m.mass_size.derivative_at(t), m.mass_position.value_at(t), m.mass_position.derivative_at(t))


def weight_at(m: ParametricMeasure, x: float, t: float) -> tuple[float, float]:
    """Return (omega(x, t), d/dt omega(x, t)) at a single point."""
    check_t(m, t)
    m.weight.check_x(x)
    w = float(np.asarray(m.weight.value(x, t)))
    dw = float(np.asarray(m.weight.t_derivative(x, t)))
    return w, dw


def log_weight_monotonicity(m: ParametricMeasure, t: float) -> Monotonicity:
    """Classify x -> d/dt log omega(x, t) on the support interval.

    Built-in families carry an analytic verdict, used directly; the sampled
    variant below exists as an independent cross-check.
    """
    check_t(m, t)
    return m.weight.log_t_derivative_monotonicity()


def sampled_log_weight_monotonicity(m: ParametricMeasure, t: float, grid_size: int = 129) -> Monotonicity:
    if grid_size < 3:
        raise ConfigError(f"grid_size must be >= 3, got {grid_size}")
    check_t(m, t)
    a, b = support(m)
    shrink = 1e-9 * (b - a)  # keep sample points valid for families open at the endpoints
    xs = np.linspace(a + shrink, b - shrink, grid_size)
    vals = np.asarray(m.weight.t_derivative(xs, t), dtype=float)
    vals = vals / np.asarray(m.weight.value(xs, t), dtype=float)
    return classify_sequence(vals)


def classify_sequence(vals: Sequence[float], tol: float | None = None) -> Monotonicity:
    """Classify a sampled sequence as increasing/decreasing/constant/other.

    ``tol`` is the flatness threshold on consecutive differences; default is
    1e-12 times the sampled value range (at least 1e-300 so an exactly
    constant sequence classifies as constant).
    """
    v = np.asarray(vals, dtype=float)
    d = np.diff(v)
    if tol is None:
        spread = float(v.max() - v.min()) if v.size else 0.0
        tol = max(1e-12 * spread, 1e-300)
    up = bool(np.any(d > tol))
    down = bool(np.any(d < -tol))
    if up and down:
        return Monotonicity.NON_MONOTONE
    if up:
        return Monotonicity.INCREASING
    if down:
        return Monotonicity.DECREASING
    return Monotonicity.CONSTANT


# --------------------------------------------------------------------------
# integration against mu_t


def weighted_rule(m: ParametricMeasure, t: float, breakpoints: Sequence[float] = ()) -> QuadratureRule:
    """Base rule with the weight folded into the quadrature weights."""
    check_t(m, t)
    rule = build_rule(m.base, breakpoints)
    m.weight.check_x(rule.nodes)
    w = rule.weights * np.asarray(m.weight.value(rule.nodes, t), dtype=float)
    if not np.all(np.isfinite(w)):
        bad = int(np.flatnonzero(~np.isfinite(w))[0])
        raise NumericError(f"weight is not finite at node x={rule.nodes[bad]!r}")
    w.flags.writeable = False
    return QuadratureRule(rule.nodes, w)


def lp_nodes(
    m: ParametricMeasure, t: float, breakpoints: Sequence[float] = ()
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights representing all of mu_t, mass atom included."""
    rule = weighted_rule(m, t, breakpoints)
    if not m.has_mass:
        return rule.nodes, rule.weights
    mv = mass_at(m, t)
    nodes = np.append(rule.nodes, mv.position)
    weights = np.append(rule.weights, mv.size)
    return nodes, weights


def integrate_mu(
    m: ParametricMeasure,
    t: float,
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float] = (),
) -> float:
    """Integrate f against mu_t (weighted base plus mass term)."""
    rule = weighted_rule(m, t, breakpoints)
    total = integrate(rule, f)
    if m.has_mass:
        mv = mass_at(m, t)
        fy = float(np.asarray(f(np.asarray([mv.position])), dtype=float).reshape(-1)[0])
        if not np.isfinite(fy):
            raise NumericError(f"integrand is not finite at the mass position y={mv.position!r}")
        total += mv.size * fy
    return total


def integrate_weight_t_derivative(
    m: ParametricMeasure,
    t: float,
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float] = (),
) -> float:
    """Integrate f * d(omega)/dt against the base measure nu (no mass term).

    The t-derivative of the weight can change sign, so this does not reuse
    the positive-weight rule machinery.
    """
    check_t(m, t)
    rule = build_rule(m.base, breakpoints)
    m.weight.check_x(rule.nodes)
    dw = np.asarray(m.weight.t_derivative(rule.nodes, t), dtype=float)
    vals = np.asarray(f(rule.nodes), dtype=float)
    if vals.shape != rule.nodes.shape:
        vals = np.broadcast_to(vals, rule.nodes.shape)
    prod = dw * vals
    if not np.all(np.isfinite(prod)):
        bad = int(np.flatnonzero(~np.isfinite(prod))[0])
        raise NumericError(f"integrand is not finite at node x={rule.nodes[bad]!r}")
    return float(rule.weights @ prod)


def raw_moments(m: ParametricMeasure, t: float, count: int) -> np.ndarray:
    """First ``count`` raw moments of mu_t (exact for polynomial integrands)."""
    nodes, weights = lp_nodes(m, t)
    pows = np.ones_like(nodes)
    out = np.empty(count)
    for k in range(count):
        out[k] = weights @ pows
        pows = pows * nodes
    return out
