"""Parameter sweeps with warm starts, finite-difference checks, validation."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import measure as msr
from .best_approx import BestApproxResult, SolverConfig, solve
from .errors import ConfigError, DomainError
from .markov import (
    MarkovReport,
    fd_probe_step,
    residual_dt,
    residual_dt_fd,
    residual_dzero,
    residual_dzero_fd,
    zero_derivatives,
)

_FMT = "{:.17g}"


@dataclass(frozen=True)
class SweepSpec:
    t_start: float
    t_stop: float
    steps: int = 11
    fd_step: float = 1e-4
    cold: bool = False

    def __post_init__(self):
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        if not (self.t_start < self.t_stop):
            raise ConfigError(f"need t_start < t_stop, got [{self.t_start}, {self.t_stop}]")
        if not (self.fd_step > 0):
            raise ConfigError(f"fd_step must be positive, got {self.fd_step}")


@dataclass(frozen=True)
class SweepRecord:
    t: float
    zeros: tuple[float, ...]
    dzero_dt: tuple[float, ...]
    fd: tuple[float, ...] | None
    condition: tuple[float | None, ...] | None
    weight_verdict: str
    residual: float
    iterations: int


def _grid(m: msr.ParametricMeasure, spec: SweepSpec) -> np.ndarray:
    lo, hi = m.t_domain
    if not (lo < spec.t_start and spec.t_stop < hi):
        raise ConfigError(
            f"sweep range [{spec.t_start}, {spec.t_stop}] must sit inside the parameter domain ({lo}, {hi})"
        )
    return np.linspace(spec.t_start, spec.t_stop, spec.steps)


def _solve_grid(
    m: msr.ParametricMeasure, cfg: SolverConfig, ts: np.ndarray, cold: bool
) -> tuple[list[BestApproxResult], list[MarkovReport]]:
    results: list[BestApproxResult] = []
    reports: list[MarkovReport] = []
    warm = None
    for t in ts:
        res = solve(m, float(t), cfg, warm_start=warm)
        results.append(res)
        reports.append(zero_derivatives(m, float(t), res, cfg))
        if not cold:
            warm = res.polynomial
    return results, reports


def run_sweep(m: msr.ParametricMeasure, cfg: SolverConfig, spec: SweepSpec) -> list[SweepRecord]:
    """Track zeros and sensitivities across a uniform t-grid.

    Interior records carry central finite differences of the tracked zeros
    against the grid neighbors; the endpoint records leave them absent.
    """
    ts = _grid(m, spec)
    results, reports = _solve_grid(m, cfg, ts, spec.cold)
    zs = np.asarray([r.zeros.zeros for r in results])
    records = []
    for i, t in enumerate(ts):
        if 0 < i < len(ts) - 1:
            fd = tuple(float(v) for v in (zs[i + 1] - zs[i - 1]) / (ts[i + 1] - ts[i - 1]))
        else:
            fd = None
        rep = reports[i]
        cond = tuple(e.condition_value for e in rep.entries) if m.has_mass else None
        records.append(
            SweepRecord(
                t=float(t),
                zeros=tuple(float(z) for z in zs[i]),
                dzero_dt=tuple(float(e.dzero_dt) for e in rep.entries),
                fd=fd,
                condition=cond,
                weight_verdict=rep.weight_verdict.value,
                residual=results[i].optimality_residual,
                iterations=results[i].iterations,
            )
        )
    return records


def zero_derivative_fd(
    m: msr.ParametricMeasure, cfg: SolverConfig, t: float, step: float = 1e-4
) -> np.ndarray:
    """Central finite difference of the zero vector from two fresh solves."""
    lo, hi = m.t_domain
    if not (lo < t - step and t + step < hi):
        raise DomainError(f"t += {step} leaves the parameter domain at t={t}")
    up = solve(m, t + step, cfg).zeros.zeros
    dn = solve(m, t - step, cfg).zeros.zeros
    return (np.asarray(up) - np.asarray(dn)) / (2.0 * step)


# --------------------------------------------------------------------------
# validation battery


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    worst: float
    threshold: float
    detail: str


def run_validation(m: msr.ParametricMeasure, cfg: SolverConfig, spec: SweepSpec) -> list[PropertyCheck]:
    """Re-derive the structural guarantees on a sweep grid and report each.

    Checks, per grid point and zero: certified optimality residual, zeros
    inside the hull, simple zeros, negativity of df_k/dx_k together with the
    sign identity of dx_k/dt, closed-form partials against central finite
    differences, and dx_k/dt against a re-solve finite difference.
    """
    ts = _grid(m, spec)
    results, reports = _solve_grid(m, cfg, ts, spec.cold)

    out: list[PropertyCheck] = []

    worst_res = 0.0
    for r in results:
        scale = max(1.0, r.norm ** (cfg.p - 1.0))
        worst_res = max(worst_res, r.optimality_residual / (cfg.residual_tol * scale))
    out.append(
        PropertyCheck(
            "optimality_residual", worst_res <= 1.0, worst_res, 1.0,
            "max residual over the grid relative to its tolerance",
        )
    )

    worst_hull = 0.0
    worst_gap = 0.0
    for r in results:
        lo, hi = r.zeros.hull
        width = hi - lo
        h_tol = cfg.hull_tol if cfg.hull_tol is not None else 1e-9 * width
        s_tol = cfg.simplicity_tol if cfg.simplicity_tol is not None else 1e-8 * width
        over = max(0.0, lo - r.zeros.zeros[0], r.zeros.zeros[-1] - hi)
        worst_hull = max(worst_hull, over / h_tol)
        worst_gap = max(worst_gap, s_tol / r.zeros.min_gap)
    out.append(
        PropertyCheck(
            "zeros_in_hull", worst_hull <= 1.0, worst_hull, 1.0,
            "max hull overshoot relative to the hull tolerance",
        )
    )
    out.append(
        PropertyCheck(
            "zeros_simple", worst_gap < 1.0, worst_gap, 1.0,
            "max simplicity tolerance to zero gap ratio",
        )
    )

    sign_violations = 0
    for rep in reports:
        for e in rep.entries:
            if not (e.dres_dzero < 0):
                sign_violations += 1
            if np.sign(e.dzero_dt) != np.sign(e.dres_dt):
                sign_violations += 1
    out.append(
        PropertyCheck(
            "derivative_sign_identity", sign_violations == 0, float(sign_violations), 0.0,
            "df_k/dx_k < 0 and sign(dx_k/dt) == sign(df_k/dt) everywhere",
        )
    )

    lo_u, hi_u = m.t_domain
    h = 1e-5
    worst_partial = 0.0
    for t, res in zip(ts, results):
        if not (lo_u < t - h and t + h < hi_u):
            continue
        P, zeros = res.polynomial, res.zeros
        hk = fd_probe_step(m, float(t), zeros, default=h)
        for k in range(len(zeros.zeros)):
            a = residual_dt(m, float(t), P, zeros, k, cfg.p)
            f = residual_dt_fd(m, float(t), P, zeros, k, cfg.p, step=hk)
            worst_partial = max(worst_partial, abs(a - f) / max(1e-12, abs(a)))
            a = residual_dzero(m, float(t), P, zeros, k, cfg.p)
            f = residual_dzero_fd(m, float(t), zeros, k, k, cfg.p, step=hk)
            worst_partial = max(worst_partial, abs(a - f) / max(1e-12, abs(a)))
    out.append(
        PropertyCheck(
            "partials_match_fd", worst_partial <= 1e-5, worst_partial, 1e-5,
            "max relative error of closed-form partials against central differences",
        )
    )

    worst_dz = 0.0
    for i, t in enumerate(ts):
        if not (lo_u < t - spec.fd_step and t + spec.fd_step < hi_u):
            continue
        fd = zero_derivative_fd(m, cfg, float(t), spec.fd_step)
        dz = np.asarray([e.dzero_dt for e in reports[i].entries])
        rel = np.abs(dz - fd) / np.maximum(1e-12, np.abs(dz))
        worst_dz = max(worst_dz, float(rel.max()))
    out.append(
        PropertyCheck(
            "dzero_dt_matches_fd", worst_dz <= 1e-3, worst_dz, 1e-3,
            "max relative error of dx_k/dt against re-solve finite differences",
        )
    )
    return out


# --------------------------------------------------------------------------
# emission


def _cell(v: float | None) -> str:
    return "" if v is None else _FMT.format(v)


def csv_header(n: int) -> str:
    cols = ["t"]
    cols += [f"x_{k}" for k in range(n + 1)]
    cols += [f"dxdt_{k}" for k in range(n + 1)]
    cols += [f"fd_{k}" for k in range(n + 1)]
    cols += [f"cond_{k}" for k in range(n + 1)]
    cols += ["weight_mono", "residual", "iters"]
    return ",".join(cols)


def record_to_csv_row(rec: SweepRecord) -> str:
    n1 = len(rec.zeros)
    cells = [_FMT.format(rec.t)]
    cells += [_FMT.format(z) for z in rec.zeros]
    cells += [_FMT.format(d) for d in rec.dzero_dt]
    cells += [_cell(rec.fd[k]) if rec.fd is not None else "" for k in range(n1)]
    cells += [_cell(rec.condition[k]) if rec.condition is not None else "" for k in range(n1)]
    cells += [rec.weight_verdict, _FMT.format(rec.residual), str(rec.iterations)]
    return ",".join(cells)


def record_to_json(rec: SweepRecord) -> str:
    doc: dict = {
        "t": rec.t,
        "zeros": list(rec.zeros),
        "dzero_dt": list(rec.dzero_dt),
        "weight_verdict": rec.weight_verdict,
        "residual": rec.residual,
        "iterations": rec.iterations,
    }
    if rec.fd is not None:
        doc["fd"] = list(rec.fd)
    if rec.condition is not None:
        doc["condition"] = list(rec.condition)
    return json.dumps(doc)


def write_records(records: list[SweepRecord], path: str, fmt: str) -> None:
    if fmt == "csv":
        n = len(records[0].zeros) - 1
        lines = [csv_header(n)] + [record_to_csv_row(r) for r in records]
    elif fmt == "jsonl":
        lines = [record_to_json(r) for r in records]
    else:
        raise ConfigError(f"unknown output format {fmt!r}, expected csv or jsonl")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
