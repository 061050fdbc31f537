"""Pure-Python reference implementations of the numeric hot kernels.

Drop-in equivalent of the compiled extension ``_ckernels``; every function
here mirrors one there with identical iteration order, so the two backends
agree to rounding noise.
"""

import cmath
import math

import numpy as np

_GOLDEN = 0.6180339887498949


def aberth_roots(coeffs, tol, max_iter):
    """Simultaneous root iteration (Aberth-Ehrlich, Gauss-Seidel sweeps).

    ``coeffs`` are monic descending complex coefficients (coeffs[0] == 1).
    Returns ``(roots, converged, iterations)``; roots are raw iterates, with
    no multiplicity post-processing.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n < 1:
        return np.empty(0, dtype=complex), True, 0
    if n == 1:
        return np.array([-c[1]]), True, 0
    dc = np.array([c[k] * (n - k) for k in range(n)], dtype=complex)
    big = max(abs(x) for x in c[1:])
    radius = 1.0 + big
    # perturbed circle: irrational angle offset plus golden-ratio radius jitter
    z = np.array(
        [
            radius * (1.0 + 0.05 * ((i * _GOLDEN) % 1.0))
            * cmath.exp(1j * (2.0 * math.pi * i / n + 0.7))
            for i in range(n)
        ],
        dtype=complex,
    )
    restol = tol * (1.0 + big)
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
                # nudge off a stationary point; keeps the sweep deterministic
                z[i] = zi * (1.0 + 1e-8) + 1e-8
                continue
            w = p / dp
            s = 0j
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d != 0:
                        s += 1.0 / d
            den = 1.0 - w * s
            z[i] = zi - (w / den if den != 0 else w)
        if maxres <= restol:
            return z, True, it
    return z, False, max_iter


def newton_girard(power_sums):
    """Elementary symmetric coefficients a_1..a_N from power sums E_1..E_N.

    a_n = (1/n) * sum_{i=1..n} (-1)^(i-1) a_{n-i} E_i, with a_0 = 1.
    """
    E = np.asarray(power_sums, dtype=complex)
    n = len(E)
    a = np.zeros(n + 1, dtype=complex)
    a[0] = 1.0
    for m in range(1, n + 1):
        s = 0j
        sign = 1.0
        for i in range(1, m + 1):
            s += sign * a[m - i] * E[i - 1]
            sign = -sign
        a[m] = s / m
    return a[1:]


def power_sums(roots, count):
    """E_n = sum_r r^n for n = 1..count, by cumulative multiplication."""
    r = np.asarray(roots, dtype=complex)
    out = np.empty(count, dtype=complex)
    acc = np.ones(len(r), dtype=complex)
    for n in range(count):
        acc = acc * r
        out[n] = acc.sum()
    return out


def coeffs_from_roots(roots):
    """Monic descending coefficients of prod (t - r), by direct convolution."""
    r = np.asarray(roots, dtype=complex)
    c = np.zeros(len(r) + 1, dtype=complex)
    c[0] = 1.0
    for k, root in enumerate(r):
        # multiply the length-(k+1) prefix by (t - root), in place
        for m in range(k + 1, 0, -1):
            c[m] = c[m] - root * c[m - 1]
    return c


def monomials(x, axes, parents):
    """Monomial vector over an exponent table, by iterative multiplication.

    Entry i equals x[axes[i]] * out[parents[i]] (or x[axes[i]] for the
    degree-one rows where parents[i] < 0). Parents always precede children,
    so a single forward sweep is exact and reproducible.
    """
    x = np.asarray(x, dtype=float)
    k = len(axes)
    out = np.empty(k, dtype=float)
    for i in range(k):
        v = x[axes[i]]
        p = parents[i]
        out[i] = v if p < 0 else v * out[p]
    return out
