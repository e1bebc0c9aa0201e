"""Compare the compiled moment kernel against the pure numpy fallback.

Both backends compute the same triple (objective value, gradient moments,
Hessian moments) from one pass over the quadrature nodes; this script times
them side by side across node counts and polynomial degrees.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats 200]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from lpzeros._kernels import BACKEND, fallback

try:
    from lpzeros._kernels import _lp_core
except ImportError:
    _lp_core = None


def make_case(rng: np.random.Generator, n_nodes: int, degree: int):
    nodes = np.sort(rng.uniform(-1.0, 1.0, n_nodes))
    weights = rng.uniform(0.01, 0.1, n_nodes)
    low_coeffs = tuple(rng.uniform(-0.5, 0.5, degree))
    return nodes, weights, low_coeffs


def bench_one(fn, nodes, weights, low_coeffs, p, degree, repeats: int) -> float:
    n_grad, n_hess = degree, 2 * degree - 1
    call = lambda: fn(nodes, weights, low_coeffs, p, n_grad, n_hess)  # noqa: E731
    call()  # warm up
    return min(timeit.repeat(call, number=repeats, repeat=3)) / repeats


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=200, help="calls per timing sample")
    parser.add_argument("--p", type=float, default=3.5, help="exponent handed to the kernel")
    args = parser.parse_args()

    if _lp_core is None:
        print("compiled kernel not built (pure python install); timing the fallback only")
    print(f"active backend in this environment: {BACKEND}")
    print()

    rng = np.random.default_rng(20240817)
    header = f"{'nodes':>6} {'degree':>6} {'numpy (us)':>12} {'cython (us)':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n_nodes in (256, 1024, 4096):
        for degree in (3, 7, 11):
            nodes, weights, low = make_case(rng, n_nodes, degree)
            t_py = bench_one(fallback.lp_moment_sums, nodes, weights, low, args.p, degree, args.repeats)
            if _lp_core is not None:
                t_cy = bench_one(_lp_core.lp_moment_sums, nodes, weights, low, args.p, degree, args.repeats)
                v_py = fallback.lp_moment_sums(nodes, weights, low, args.p, degree, 2 * degree - 1)
                v_cy = _lp_core.lp_moment_sums(nodes, weights, low, args.p, degree, 2 * degree - 1)
                if abs(v_py[0] - v_cy[0]) > 1e-12 * max(1.0, abs(v_py[0])):
                    raise SystemExit("backends disagree on the objective value")
                print(f"{n_nodes:>6} {degree:>6} {t_py * 1e6:>12.1f} {t_cy * 1e6:>12.1f} {t_py / t_cy:>7.2f}x")
            else:
                print(f"{n_nodes:>6} {degree:>6} {t_py * 1e6:>12.1f} {'-':>12} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
