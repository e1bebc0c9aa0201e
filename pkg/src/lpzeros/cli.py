"""Command line interface: solve, sweep, validate.

Exit codes: 0 success, 1 validation property failed, 2 configuration error,
3 structural or convergence failure during solving.
"""

from __future__ import annotations

import argparse
import json
import sys

from .best_approx import solve
from .config import load_problem
from .errors import ConfigError, DomainError, LpzerosError
from .markov import zero_derivatives
from .sweep import SweepSpec, run_sweep, run_validation, write_records


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpzeros",
        description="minimal L^p monic polynomials: solve, track zeros, certify monotonicity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    one = sub.add_parser("solve", help="solve at a single parameter value")
    one.add_argument("--config", required=True, help="problem configuration JSON")
    one.add_argument("--t", type=float, required=True, help="parameter value")
    one.add_argument("--out", help="write the JSON result here instead of stdout")

    sw = sub.add_parser("sweep", help="track zeros across a parameter grid")
    sw.add_argument("--config", required=True, help="problem configuration JSON")
    sw.add_argument("--t-start", type=float, required=True)
    sw.add_argument("--t-stop", type=float, required=True)
    sw.add_argument("--steps", type=int, default=11)
    sw.add_argument("--out", required=True, help="output file path")
    sw.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sw.add_argument("--cold", action="store_true", help="disable warm starts between grid points")

    va = sub.add_parser("validate", help="re-check structural properties on a grid")
    va.add_argument("--config", required=True, help="problem configuration JSON")
    va.add_argument("--t-start", type=float, required=True)
    va.add_argument("--t-stop", type=float, required=True)
    va.add_argument("--steps", type=int, default=11)
    va.add_argument("--fd-step", type=float, default=1e-4)
    return parser


def _cmd_solve(args) -> int:
    problem = load_problem(args.config)
    result = solve(problem.measure, args.t, problem.solver)
    report = zero_derivatives(problem.measure, args.t, result, problem.solver)
    doc = {
        "t": args.t,
        "p": problem.solver.p,
        "n": problem.solver.n,
        "low_coeffs": list(result.polynomial.low_coeffs),
        "zeros": list(result.zeros.zeros),
        "norm": result.norm,
        "optimality_residual": result.optimality_residual,
        "iterations": result.iterations,
        "report": report.as_dict(),
    }
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_sweep(args) -> int:
    problem = load_problem(args.config)
    spec = SweepSpec(args.t_start, args.t_stop, args.steps, cold=args.cold)
    records = run_sweep(problem.measure, problem.solver, spec)
    write_records(records, args.out, args.format)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_validate(args) -> int:
    problem = load_problem(args.config)
    spec = SweepSpec(args.t_start, args.t_stop, args.steps, fd_step=args.fd_step)
    checks = run_validation(problem.measure, problem.solver, spec)
    failed = 0
    for c in checks:
        tag = "PASS" if c.passed else "FAIL"
        print(f"{tag} {c.name}: worst {c.worst:.3e} against {c.threshold:.3e} ({c.detail})")
        failed += 0 if c.passed else 1
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_validate(args)
    except (ConfigError, DomainError) as exc:
        # bad file or bad request; the solver never got a well-posed problem
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except LpzerosError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
