"""Base measures and composite Gauss-Legendre integration.

The continuous base measure is plain Lebesgue measure on an interval,
integrated with a fixed composite Gauss-Legendre rule.  Known kinks of the
integrand (typically polynomial zeros, where |P|^p loses smoothness) are
passed in as breakpoints and become panel boundaries, so every panel sees a
smooth integrand and the composite rule converges at its nominal rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, NumericError

DEFAULT_PANELS = 16
DEFAULT_NODES_PER_PANEL = 64

# breakpoints closer than this (relative to interval width) collapse to one
_BREAKPOINT_DEDUP = 1e-12


@dataclass(frozen=True)
class AbsolutelyContinuous:
    """Lebesgue base measure on [a, b] with a composite quadrature layout."""

    a: float
    b: float
    panels: int = DEFAULT_PANELS
    nodes_per_panel: int = DEFAULT_NODES_PER_PANEL

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b) and self.a < self.b):
            raise ConfigError(f"support interval is empty or not finite: [{self.a}, {self.b}]")
        if self.panels < 1:
            raise ConfigError(f"panels must be >= 1, got {self.panels}")
        if self.nodes_per_panel < 2:
            raise ConfigError(f"nodes_per_panel must be >= 2, got {self.nodes_per_panel}")


@dataclass(frozen=True)
class Discrete:
    """Finite atomic base measure: positive weights at increasing locations."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.atoms) == 0:
            raise ConfigError("discrete base measure needs at least one atom")
        locs = [x for x, _ in self.atoms]
        if any(not np.isfinite(x) for x in locs):
            raise ConfigError("atom locations must be finite")
        if any(locs[i] >= locs[i + 1] for i in range(len(locs) - 1)):
            raise ConfigError("atom locations must be strictly increasing")
        if any(w <= 0 or not np.isfinite(w) for _, w in self.atoms):
            raise ConfigError("atom weights must be positive and finite")


BaseMeasure = AbsolutelyContinuous | Discrete


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights; treat both arrays as read-only."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return self.nodes.size


@lru_cache(maxsize=32)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _panel_boundaries(base: AbsolutelyContinuous, breakpoints: Sequence[float]) -> np.ndarray:
    a, b = base.a, base.b
    width = b - a
    cuts = list(np.linspace(a, b, base.panels + 1))
    for t in breakpoints:
        # only interior breakpoints split panels; outside points are irrelevant
        if a < t < b:
            cuts.append(float(t))
    cuts.sort()
    out = [cuts[0]]
    for c in cuts[1:]:
        if c - out[-1] > _BREAKPOINT_DEDUP * width:
            out.append(c)
    out[-1] = b
    return np.asarray(out)


def build_rule(base: BaseMeasure, breakpoints: Sequence[float] = ()) -> QuadratureRule:
    """Assemble the quadrature rule for a base measure.

    For a discrete base the atoms are returned verbatim.  For a continuous
    base the interval is cut at the uniform panel grid united with every
    interior breakpoint, and each panel carries an affinely mapped
    Gauss-Legendre rule with ``nodes_per_panel`` points.
    """
    if isinstance(base, Discrete):
        arr = np.asarray(base.atoms, dtype=float)
        nodes = arr[:, 0].copy()
        weights = arr[:, 1].copy()
    else:
        xs, ws = _gauss_legendre(base.nodes_per_panel)
        cuts = _panel_boundaries(base, breakpoints)
        mid = 0.5 * (cuts[1:] + cuts[:-1])
        half = 0.5 * (cuts[1:] - cuts[:-1])
        nodes = (mid[:, None] + half[:, None] * xs[None, :]).ravel()
        weights = (half[:, None] * ws[None, :]).ravel()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights)


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]) -> float:
    """Integrate a vectorized integrand against the rule.

    Raises NumericError if the integrand returns a non-finite value at any
    node, reporting the offending node.
    """
    vals = np.asarray(f(rule.nodes), dtype=float)
    if vals.shape != rule.nodes.shape:
        vals = np.broadcast_to(vals, rule.nodes.shape)
    if not np.all(np.isfinite(vals)):
        bad = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise NumericError(f"integrand is not finite at node x={rule.nodes[bad]!r}")
    return float(rule.weights @ vals)
