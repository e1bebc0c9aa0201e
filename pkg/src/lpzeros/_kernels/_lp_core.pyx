# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled accumulation kernels; contract documented in fallback.py."""

import numpy as np

from libc.math cimport fabs, pow


def poly_eval_many(low, x):
    cdef const double[::1] b = np.ascontiguousarray(low, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xs.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j, d = b.shape[0], m = xs.shape[0]
    cdef double acc, xv
    for i in range(m):
        xv = xs[i]
        acc = 1.0
        for j in range(d - 1, -1, -1):
            acc = acc * xv + b[j]
        o[i] = acc
    return out


def lp_moment_sums(x, w, low, double p, Py_ssize_t n_grad, Py_ssize_t n_hess):
    cdef const double[::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] ws = np.ascontiguousarray(w, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(low, dtype=np.float64)
    gvec = np.zeros(n_grad, dtype=np.float64)
    mvec = np.zeros(n_hess, dtype=np.float64)
    cdef double[::1] g = gvec
    cdef double[::1] h = mvec
    cdef Py_ssize_t i, j, d = b.shape[0], m = xs.shape[0]
    cdef Py_ssize_t both = n_grad if n_grad < n_hess else n_hess
    cdef double q = p - 2.0
    # small integral exponents (p = 2, 3, 4, ...) take repeated products
    # instead of libm pow; this also matches the numpy fallback bit for bit,
    # since its ** operator does the same for small integer powers
    cdef Py_ssize_t qi = <Py_ssize_t> q
    cdef bint integral = (q == <double> qi) and 0 <= qi <= 8
    cdef double acc, xv, ap, base, wg, wh, xp, value = 0.0
    for i in range(m):
        xv = xs[i]
        acc = 1.0
        for j in range(d - 1, -1, -1):
            acc = acc * xv + b[j]
        ap = fabs(acc)
        if integral:
            base = 1.0            # qi == 0 leaves 1 even at ap == 0,
            for j in range(qi):   # keeping p = 2 a plain moment
                base *= ap
        else:
            base = pow(ap, q)     # pow(0, 0) == 1 by C99 for the same reason
        wh = ws[i] * base
        wg = wh * acc
        value += wh * ap * ap
        xp = 1.0
        for j in range(both):
            g[j] += wg * xp
            h[j] += wh * xp
            xp *= xv
        for j in range(both, n_grad):
            g[j] += wg * xp
            xp *= xv
        for j in range(both, n_hess):
            h[j] += wh * xp
            xp *= xv
    return value, gvec, mvec
