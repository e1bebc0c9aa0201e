"""Monic polynomials, deflation, and certified real-zero extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import poly_eval_many
from .errors import StructuralError

BRACKET_GRID_FACTOR = 64
BRACKET_DOUBLINGS = 3
SIMPLICITY_TOL_SCALE = 1e-8
HULL_TOL_SCALE = 1e-9
POLISH_TOL = 1e-12


@dataclass(frozen=True)
class MonicPolynomial:
    """x^d + low_coeffs[d-1] x^(d-1) + ... + low_coeffs[0], ascending order."""

    low_coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "low_coeffs", tuple(float(c) for c in self.low_coeffs))

    @property
    def degree(self) -> int:
        return len(self.low_coeffs)

    def coefficients(self) -> np.ndarray:
        """All coefficients, ascending, leading 1 included."""
        return np.append(np.asarray(self.low_coeffs), 1.0)

    def __call__(self, x):
        out = poly_eval_many(self.low_coeffs, np.atleast_1d(x))
        return float(out[0]) if np.isscalar(x) else out

    def derivative_at(self, x: float) -> float:
        c = self.coefficients()
        dc = c[1:] * np.arange(1, c.size)
        return float(np.polynomial.polynomial.polyval(x, dc))

    def deflate(self, x0: float) -> "MonicPolynomial":
        """Synthetic division by (x - x0); the remainder P(x0) is dropped."""
        desc = self.coefficients()[::-1]
        q = [1.0]
        for a in desc[1 : self.degree]:
            q.append(float(a) + x0 * q[-1])
        return MonicPolynomial(tuple(q[::-1][: self.degree - 1]))

    @classmethod
    def from_zeros(cls, zeros) -> "MonicPolynomial":
        desc = np.atleast_1d(np.poly(np.asarray(zeros, dtype=float)))
        return cls(tuple(desc[1:][::-1]))


@dataclass(frozen=True)
class ZeroSet:
    """Strictly increasing simple real zeros with the hull they were found in."""

    zeros: tuple[float, ...]
    hull: tuple[float, float]
    min_gap: float


def _bisect_then_newton(P: MonicPolynomial, a: float, b: float, fa: float, fb: float) -> float:
    # bisection to roughly machine width, then a few Newton polish steps
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = P(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    x = 0.5 * (a + b)
    best, best_val = x, abs(P(x))
    for _ in range(4):
        d = P.derivative_at(x)
        if d == 0.0 or not np.isfinite(d):
            break
        x = x - P(x) / d
        if not (a <= x <= b):  # keep the polish inside its own bracket
            break
        v = abs(P(x))
        if v < best_val:
            best, best_val = x, v
        else:
            break
    return best


def _scan(P: MonicPolynomial, lo: float, hi: float, doublings: int) -> list[float]:
    degree = P.degree
    roots: list[float] = []
    for attempt in range(doublings + 1):
        npts = BRACKET_GRID_FACTOR * degree * (2**attempt) + 1
        grid = np.linspace(lo, hi, npts)
        vals = P(grid)
        roots = [float(g) for g in grid[vals == 0.0]]
        neg = vals < 0
        ok = (vals[:-1] != 0.0) & (vals[1:] != 0.0) & (neg[:-1] != neg[1:])
        for i in np.flatnonzero(ok):
            roots.append(
                float(_bisect_then_newton(P, float(grid[i]), float(grid[i + 1]), float(vals[i]), float(vals[i + 1])))
            )
        if len(roots) >= degree:
            break
    roots.sort()
    return roots


def approximate_real_zeros(P: MonicPolynomial, lo: float, hi: float, doublings: int = 1) -> list[float]:
    """Best-effort sorted real zeros in [lo, hi]; no structural guarantees.

    Used to place quadrature breakpoints while the solver iterates, where a
    missed zero only costs accuracy, never correctness.
    """
    if P.degree == 0:
        return []
    return _scan(P, lo, hi, doublings)


def find_real_zeros(
    P: MonicPolynomial,
    hull: tuple[float, float],
    simplicity_tol: float | None = None,
    hull_tol: float | None = None,
) -> ZeroSet:
    """Extract all zeros of P, certifying they are real, simple, and in the hull.

    Scans a sign-change grid over the slightly inflated hull, refining each
    bracket by bisection plus Newton polish.  If fewer than ``degree`` zeros
    appear, the scan widens to the Cauchy bound 1 + max|low_coeffs| so a
    genuine hull violation is reported as such rather than as missing real
    zeros.  Raises StructuralError when zeros are complex, repeated within
    ``simplicity_tol``, or outside the hull by more than ``hull_tol``.
    """
    degree = P.degree
    if degree == 0:
        raise StructuralError("a degree zero polynomial has no zeros to certify")
    lo, hi = hull
    width = hi - lo
    if not (width > 0):
        raise StructuralError(f"hull is degenerate: [{lo}, {hi}]")
    s_tol = SIMPLICITY_TOL_SCALE * width if simplicity_tol is None else simplicity_tol
    h_tol = HULL_TOL_SCALE * width if hull_tol is None else hull_tol

    roots = _scan(P, lo - h_tol, hi + h_tol, BRACKET_DOUBLINGS)
    if len(roots) < degree:
        bound = 1.0 + max(abs(c) for c in P.low_coeffs)
        wide_lo, wide_hi = min(lo - h_tol, -bound), max(hi + h_tol, bound)
        roots = _scan(P, wide_lo, wide_hi, BRACKET_DOUBLINGS)
        if len(roots) < degree:
            raise StructuralError(
                f"zeros are not all real and simple: found {len(roots)} of {degree}"
                f" in [{wide_lo}, {wide_hi}]"
            )
    if len(roots) > degree:
        raise StructuralError(f"found {len(roots)} zero candidates for degree {degree}")

    # polish certificate: the residual must be tiny on the scale of x^degree
    for r in roots:
        if abs(P(r)) > POLISH_TOL * max(1.0, abs(r)) ** degree:
            raise StructuralError(f"zero candidate {r} failed the residual certificate")

    gaps = np.diff(roots)
    min_gap = float(gaps.min()) if gaps.size else float("inf")
    if min_gap <= s_tol:
        raise StructuralError(f"zeros are not simple: smallest gap {min_gap} <= {s_tol}")
    if roots[0] < lo - h_tol or roots[-1] > hi + h_tol:
        raise StructuralError(
            f"zero outside the support hull [{lo}, {hi}]: extremes {roots[0]}, {roots[-1]}"
        )
    return ZeroSet(tuple(roots), (lo, hi), min_gap)
