# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric hot kernels; mirrors _pykernels function for function
with identical iteration order."""

from libc.math cimport cos, sin, pi

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF GOLDEN = 0.6180339887498949


def aberth_roots(coeffs, double tol, int max_iter):
    """Simultaneous root iteration (Aberth-Ehrlich, Gauss-Seidel sweeps)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef int n = c.shape[0] - 1
    if n < 1:
        return np.empty(0, dtype=np.complex128), True, 0
    if n == 1:
        return np.array([-c[1]]), True, 0
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dc = np.empty(n, dtype=np.complex128)
    cdef int k, i, j, it
    for k in range(n):
        dc[k] = c[k] * (n - k)
    cdef double big = 0.0, a
    for k in range(1, n + 1):
        a = abs(c[k])
        if a > big:
            big = a
    cdef double radius = 1.0 + big
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.empty(n, dtype=np.complex128)
    cdef double ang, rad
    for i in range(n):
        ang = 2.0 * pi * i / n + 0.7
        rad = radius * (1.0 + 0.05 * ((i * GOLDEN) % 1.0))
        z[i] = rad * (cos(ang) + 1j * sin(ang))
    cdef double restol = tol * (1.0 + big)
    cdef double complex zi, p, dp, w, s, den, d
    cdef double maxres, ap
    for it in range(1, max_iter + 1):
        maxres = 0.0
        for i in range(n):
            zi = z[i]
            p = c[0]
            for k in range(1, n + 1):
                p = p * zi + c[k]
            ap = abs(p)
            if ap > maxres:
                maxres = ap
            dp = dc[0]
            for k in range(1, n):
                dp = dp * zi + dc[k]
            if dp == 0:
                z[i] = zi * (1.0 + 1e-8) + 1e-8
                continue
            w = p / dp
            s = 0
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d != 0:
                        s = s + 1.0 / d
            den = 1.0 - w * s
            if den != 0:
                z[i] = zi - w / den
            else:
                z[i] = zi - w
        if maxres <= restol:
            return z, True, it
    return z, False, max_iter


def newton_girard(power_sums):
    """Elementary symmetric coefficients a_1..a_N from power sums E_1..E_N."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] E = np.ascontiguousarray(power_sums, dtype=np.complex128)
    cdef int n = E.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] a = np.zeros(n + 1, dtype=np.complex128)
    a[0] = 1.0
    cdef int m, i
    cdef double complex s
    cdef double sign
    for m in range(1, n + 1):
        s = 0
        sign = 1.0
        for i in range(1, m + 1):
            s = s + sign * a[m - i] * E[i - 1]
            sign = -sign
        a[m] = s / m
    return np.asarray(a[1:])


def power_sums(roots, int count):
    """E_n = sum_r r^n for n = 1..count, by cumulative multiplication."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] r = np.ascontiguousarray(roots, dtype=np.complex128)
    cdef int m = r.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(count, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] acc = np.ones(m, dtype=np.complex128)
    cdef int n, i
    cdef double complex total
    for n in range(count):
        total = 0
        for i in range(m):
            acc[i] = acc[i] * r[i]
            total = total + acc[i]
        out[n] = total
    return out


def coeffs_from_roots(roots):
    """Monic descending coefficients of prod (t - r), by direct convolution."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] r = np.ascontiguousarray(roots, dtype=np.complex128)
    cdef int n = r.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = np.zeros(n + 1, dtype=np.complex128)
    c[0] = 1.0
    cdef int k, m
    cdef double complex root
    for k in range(n):
        root = r[k]
        for m in range(k + 1, 0, -1):
            c[m] = c[m] - root * c[m - 1]
    return c


def monomials(x, axes, parents):
    """Monomial vector over an exponent table, by iterative multiplication."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ax = np.ascontiguousarray(axes, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] par = np.ascontiguousarray(parents, dtype=np.int32)
    cdef int k = ax.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(k, dtype=np.float64)
    cdef int i, p
    cdef double v
    for i in range(k):
        v = xv[ax[i]]
        p = par[i]
        out[i] = v if p < 0 else v * out[p]
    return out
