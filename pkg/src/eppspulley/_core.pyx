# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: the O(n^2) pairwise Gaussian sum of the test
statistic and the Nystrom Gram matrix of the limit-null covariance
kernel."""

import numpy as np

from libc.math cimport exp, fabs


def pairwise_gauss_sum(double[::1] y, double gamma):
    """Sum of exp(-gamma*(y[j]-y[k])^2) over all ordered pairs (j, k).

    Diagonal terms contribute exactly 1 each.  Off-diagonal terms are
    accumulated once and doubled, with Neumaier compensation so the
    result is accurate to a few ulps regardless of n.
    """
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t j, k
    cdef double s = 0.0, c = 0.0, t, term, d
    for j in range(n):
        for k in range(j + 1, n):
            d = y[j] - y[k]
            term = exp(-gamma * d * d)
            t = s + term
            if fabs(s) >= fabs(term):
                c += (s - t) + term
            else:
                c += (term - t) + s
            s = t
    return 2.0 * (s + c) + <double> n


def kernel_gram(double[::1] y):
    """Matrix K(y[i], y[j]) of the limit-null covariance kernel.

    K(s, t) = exp(-(s-t)^2/2) - (1 + s*t + (s*t)^2/2) * exp(-(s^2+t^2)/2).
    The upper triangle is computed once and mirrored, so the output is
    exactly symmetric.
    """
    cdef Py_ssize_t n = y.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] K = out
    cdef Py_ssize_t i, j
    cdef double si, tj, st, v
    for i in range(n):
        si = y[i]
        for j in range(i, n):
            tj = y[j]
            st = si * tj
            v = exp(-0.5 * (si - tj) * (si - tj)) \
                - (1.0 + st + 0.5 * st * st) * exp(-0.5 * (si * si + tj * tj))
            K[i, j] = v
            K[j, i] = v
    return out
