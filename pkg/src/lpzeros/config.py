"""Strict JSON problem configuration for the command line tools.

Unknown keys are rejected by name at every level; value constraints are
checked eagerly so a bad file fails before any numerics run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .best_approx import SolverConfig
from .errors import ConfigError
from .measure import (
    AffineScalar,
    ConstantScalar,
    ConstantWeight,
    ExponentialScalar,
    ExponentialWeight,
    JacobiVaryAlpha,
    JacobiVaryBeta,
    ParametricMeasure,
    ScalarFamily,
)
from .quadrature import AbsolutelyContinuous, Discrete

_SOLVER_KEYS = (
    "residual_tol",
    "max_newton_iters",
    "continuation_step",
    "levenberg_floor",
    "simplicity_tol",
    "hull_tol",
    "coincidence_tol",
)


@dataclass(frozen=True)
class Problem:
    measure: ParametricMeasure
    solver: SolverConfig


def _require_keys(doc: dict, allowed: set[str], required: set[str], where: str) -> None:
    for key in doc:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in {where}")
    for key in required:
        if key not in doc:
            raise ConfigError(f"missing key {key!r} in {where}")


def _number(doc: dict, key: str, where: str) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {v!r}")
    return float(v)


def _integer(doc: dict, key: str, where: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {v!r}")
    return v


def _pair(doc: dict, key: str, where: str) -> tuple[float, float]:
    v = doc[key]
    if not (isinstance(v, list) and len(v) == 2):
        raise ConfigError(f"{where}.{key} must be a two element list, got {v!r}")
    out = []
    for item in v:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{where}.{key} entries must be numbers, got {item!r}")
        out.append(float(item))
    return out[0], out[1]


def _parse_base(doc: Any, support: tuple[float, float]):
    if not isinstance(doc, dict):
        raise ConfigError("base_measure must be an object")
    if doc.get("type") == "lebesgue":
        _require_keys(doc, {"type", "panels", "nodes_per_panel"}, {"type"}, "base_measure")
        panels = _integer(doc, "panels", "base_measure") if "panels" in doc else 16
        npp = _integer(doc, "nodes_per_panel", "base_measure") if "nodes_per_panel" in doc else 64
        return AbsolutelyContinuous(support[0], support[1], panels, npp)
    if doc.get("type") == "discrete":
        _require_keys(doc, {"type", "atoms"}, {"type", "atoms"}, "base_measure")
        atoms = doc["atoms"]
        if not (isinstance(atoms, list) and atoms):
            raise ConfigError("base_measure.atoms must be a nonempty list of [x, weight] pairs")
        parsed = []
        for i, pair in enumerate(atoms):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ConfigError(f"base_measure.atoms[{i}] must be an [x, weight] pair")
            for item in pair:
                if isinstance(item, bool) or not isinstance(item, (int, float)):
                    raise ConfigError(f"base_measure.atoms[{i}] entries must be numbers")
            parsed.append((float(pair[0]), float(pair[1])))
        base = Discrete(tuple(parsed))
        a, b = support
        if parsed[0][0] < a or parsed[-1][0] > b:
            raise ConfigError("discrete atoms must lie inside the support interval")
        return base
    raise ConfigError(f"base_measure.type must be 'lebesgue' or 'discrete', got {doc.get('type')!r}")


def _parse_weight(doc: Any, support: tuple[float, float], t_domain: tuple[float, float]):
    if not isinstance(doc, dict):
        raise ConfigError("weight must be an object")
    family = doc.get("family")
    if family == "constant":
        _require_keys(doc, {"family"}, {"family"}, "weight")
        return ConstantWeight()
    if family == "exponential":
        _require_keys(doc, {"family"}, {"family"}, "weight")
        return ExponentialWeight()
    if family in ("jacobi_vary_alpha", "jacobi_vary_beta"):
        if not (-1 < support[0] and support[1] < 1):
            raise ConfigError("jacobi weights need the support inside (-1, 1)")
        if t_domain[0] < -1:
            raise ConfigError("jacobi weights need t_domain inside (-1, inf)")
        if family == "jacobi_vary_alpha":
            _require_keys(doc, {"family", "beta"}, {"family", "beta"}, "weight")
            return JacobiVaryAlpha(_number(doc, "beta", "weight"))
        _require_keys(doc, {"family", "alpha"}, {"family", "alpha"}, "weight")
        return JacobiVaryBeta(_number(doc, "alpha", "weight"))
    raise ConfigError(
        f"weight.family must be one of constant, exponential, jacobi_vary_alpha,"
        f" jacobi_vary_beta; got {family!r}"
    )


def _parse_scalar(doc: Any, where: str) -> ScalarFamily:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be an object")
    family = doc.get("family")
    if family == "constant":
        _require_keys(doc, {"family", "value"}, {"family", "value"}, where)
        return ConstantScalar(_number(doc, "value", where))
    if family == "affine":
        _require_keys(doc, {"family", "intercept", "slope"}, {"family", "intercept", "slope"}, where)
        return AffineScalar(_number(doc, "intercept", where), _number(doc, "slope", where))
    if family == "exponential":
        _require_keys(doc, {"family", "scale", "rate"}, {"family", "scale", "rate"}, where)
        return ExponentialScalar(_number(doc, "scale", where), _number(doc, "rate", where))
    raise ConfigError(f"{where}.family must be constant, affine, or exponential; got {family!r}")


def _check_mass_size_positive(fam: ScalarFamily, t_domain: tuple[float, float]) -> None:
    lo, hi = t_domain
    if isinstance(fam, ConstantScalar):
        ok = fam.value > 0
    elif isinstance(fam, AffineScalar):
        ok = fam.value_at(lo) > 0 and fam.value_at(hi) > 0
    else:
        ok = fam.scale > 0
    if not ok:
        raise ConfigError("mass.j must stay positive across t_domain")


def parse_problem(doc: Any) -> Problem:
    if not isinstance(doc, dict):
        raise ConfigError("configuration root must be an object")
    allowed = {"p", "n", "support", "base_measure", "weight", "mass", "t_domain", "solver"}
    _require_keys(doc, allowed, {"p", "n", "support", "base_measure", "weight", "t_domain"}, "configuration")

    p = _number(doc, "p", "configuration")
    n = _integer(doc, "n", "configuration")
    support = _pair(doc, "support", "configuration")
    if not support[0] < support[1]:
        raise ConfigError(f"support must be a nonempty interval, got {list(support)}")
    t_domain = _pair(doc, "t_domain", "configuration")
    if not t_domain[0] < t_domain[1]:
        raise ConfigError(f"t_domain must be a nonempty interval, got {list(t_domain)}")

    base = _parse_base(doc["base_measure"], support)
    weight = _parse_weight(doc["weight"], support, t_domain)

    mass_size = mass_position = None
    if "mass" in doc:
        mass = doc["mass"]
        if not isinstance(mass, dict):
            raise ConfigError("mass must be an object")
        _require_keys(mass, {"j", "y"}, {"j", "y"}, "mass")
        mass_size = _parse_scalar(mass["j"], "mass.j")
        mass_position = _parse_scalar(mass["y"], "mass.y")
        _check_mass_size_positive(mass_size, t_domain)

    solver_kwargs: dict[str, Any] = {}
    if "solver" in doc:
        sdoc = doc["solver"]
        if not isinstance(sdoc, dict):
            raise ConfigError("solver must be an object")
        _require_keys(sdoc, set(_SOLVER_KEYS), set(), "solver")
        for key in sdoc:
            if key == "max_newton_iters":
                solver_kwargs[key] = _integer(sdoc, key, "solver")
            else:
                solver_kwargs[key] = _number(sdoc, key, "solver")

    measure = ParametricMeasure(
        base=base,
        weight=weight,
        t_domain=t_domain,
        mass_size=mass_size,
        mass_position=mass_position,
    )
    solver = SolverConfig(n=n, p=p, **solver_kwargs)
    return Problem(measure=measure, solver=solver)


def load_problem(path: str) -> Problem:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read configuration file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    return parse_problem(doc)
