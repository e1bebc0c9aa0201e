"""Vectorized numpy implementation of the accumulation kernels.

These are the hot inner sums of the solver.  A compiled twin lives in
``_lp_core.pyx``; both implementations honor the same contract, including
the ``0.0 ** 0.0 == 1.0`` convention so the p = 2 case degenerates to plain
weighted moments even at nodes where the polynomial vanishes.
"""

from __future__ import annotations

import numpy as np


def poly_eval_many(low, x):
    """Evaluate the monic polynomial with ascending low coefficients at x.

    ``low`` holds the coefficients of 1, x, ..., x^(d-1); the leading
    coefficient of x^d is implicitly 1.  Horner evaluation, array in/out.
    """
    xs = np.asarray(x, dtype=float)
    acc = np.ones_like(xs)
    for c in np.asarray(low, dtype=float)[::-1]:
        acc = acc * xs + c
    return acc


def lp_moment_sums(x, w, low, p, n_grad, n_hess):
    """Weighted power sums against |P|^p and its first two fractional layers.

    Returns ``(value, gvec, mvec)`` where, over nodes x_q with weights w_q
    and P the monic polynomial described by ``low``:

        value   = sum_q w_q |P(x_q)|^p
        gvec[i] = sum_q w_q x_q^i |P(x_q)|^(p-1) sgn P(x_q),   i < n_grad
        mvec[m] = sum_q w_q x_q^m |P(x_q)|^(p-2),              m < n_hess
    """
    xs = np.asarray(x, dtype=float)
    ws = np.asarray(w, dtype=float)
    pv = poly_eval_many(low, xs)
    ap = np.abs(pv)
    base = ap ** (p - 2.0)
    wh = ws * base
    wg = wh * pv
    value = float(wh @ (ap * ap))
    k = max(n_grad, n_hess, 1)
    pows = np.empty((k, xs.size))
    pows[0] = 1.0
    for i in range(1, k):
        pows[i] = pows[i - 1] * xs
    gvec = pows[:n_grad] @ wg
    mvec = pows[:n_hess] @ wh
    return value, gvec, mvec
