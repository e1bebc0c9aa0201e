"""Kernel contract tests: fallback against brute force, compiled against fallback."""

import numpy as np
import pytest

from lpzeros._kernels import BACKEND, fallback, lp_moment_sums, poly_eval_many

try:
    from lpzeros._kernels import _lp_core
except ImportError:
    _lp_core = None


def _brute(x, w, low, p, n_grad, n_hess):
    coeffs = np.append(np.asarray(low, dtype=float), 1.0)
    pv = np.polynomial.polynomial.polyval(x, coeffs)
    ap = np.abs(pv)
    value = float(np.sum(w * ap**p))
    gvec = np.array([np.sum(w * x**i * ap ** (p - 1) * np.sign(pv)) for i in range(n_grad)])
    mvec = np.array([np.sum(w * x**m * ap ** (p - 2)) for m in range(n_hess)])
    return value, gvec, mvec


def _cases(seed=20240817):
    rng = np.random.default_rng(seed)
    for deg in (1, 3, 6):
        x = np.sort(rng.uniform(-1.5, 1.5, size=40))
        w = rng.uniform(0.01, 1.0, size=40)
        low = rng.normal(0, 0.8, size=deg)
        yield x, w, low


@pytest.mark.parametrize("p", [2.0, 3.0, 4.0, 5.5])
def test_fallback_matches_bruteforce(p):
    for x, w, low in _cases():
        d = low.size
        value, gvec, mvec = fallback.lp_moment_sums(x, w, low, p, d + 1, 2 * d + 1)
        bv, bg, bm = _brute(x, w, low, p, d + 1, 2 * d + 1)
        assert value == pytest.approx(bv, rel=1e-12)
        assert gvec == pytest.approx(bg, rel=1e-11, abs=1e-13)
        assert mvec == pytest.approx(bm, rel=1e-11, abs=1e-13)


def test_poly_eval_many_matches_polyval():
    rng = np.random.default_rng(7)
    for deg in (1, 2, 5, 11):
        low = rng.normal(size=deg)
        x = rng.uniform(-2, 2, size=17)
        coeffs = np.append(low, 1.0)
        expected = np.polynomial.polynomial.polyval(x, coeffs)
        assert poly_eval_many(low, x) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_zero_node_power_convention_p2():
    # at p = 2 a node sitting exactly on a zero of P must still contribute
    # plain moments to mvec: 0 ** 0 is taken as 1
    x = np.array([0.5])
    w = np.array([2.0])
    low = np.array([-0.5])  # P = x - 0.5, so P(0.5) = 0
    value, gvec, mvec = lp_moment_sums(x, w, low, 2.0, 2, 3)
    assert value == 0.0
    assert gvec.tolist() == [0.0, 0.0]
    assert mvec.tolist() == [2.0, 1.0, 0.5]


def test_zero_node_vanishes_for_p_above_2():
    x = np.array([0.5])
    w = np.array([2.0])
    low = np.array([-0.5])
    value, gvec, mvec = lp_moment_sums(x, w, low, 3.0, 2, 3)
    assert value == 0.0
    assert gvec.tolist() == [0.0, 0.0]
    assert mvec.tolist() == [0.0, 0.0, 0.0]


def test_empty_output_sizes():
    x = np.array([0.1, 0.7])
    w = np.array([1.0, 1.0])
    value, gvec, mvec = lp_moment_sums(x, w, np.array([0.0]), 2.0, 0, 0)
    assert gvec.shape == (0,)
    assert mvec.shape == (0,)
    assert value > 0


@pytest.mark.skipif(_lp_core is None, reason="compiled kernel not built")
@pytest.mark.parametrize("p", [2.0, 2.5, 4.0, 5.5])
def test_compiled_matches_fallback(p):
    for x, w, low in _cases(seed=99):
        d = low.size
        a = _lp_core.lp_moment_sums(x, w, low, p, d + 1, 2 * d + 1)
        b = fallback.lp_moment_sums(x, w, low, p, d + 1, 2 * d + 1)
        assert a[0] == pytest.approx(b[0], rel=1e-13)
        assert a[1] == pytest.approx(b[1], rel=1e-12, abs=1e-14)
        assert a[2] == pytest.approx(b[2], rel=1e-12, abs=1e-14)
        pa = _lp_core.poly_eval_many(low, x)
        pb = fallback.poly_eval_many(low, x)
        assert pa == pytest.approx(pb, rel=1e-13, abs=1e-15)


def test_backend_reports_a_known_name():
    assert BACKEND in ("cython", "numpy")
