"""Shared numeric kernels: power-sum/elementary-symmetric conversion, complex
monic-polynomial root solving, and min-cost assignment.

The root solver runs Aberth-Ehrlich simultaneous iteration and then resolves
multiplicities: clusters of iterates are replaced by a single refined root
(Newton on the (m-1)-th derivative, where a multiplicity-m root is simple),
multiple roots are deflated out and the remaining simple roots re-polished on
the deflated polynomial. Every candidate multiplicity structure is validated
by reconstructing the coefficients from the proposed roots; the structure
with the smallest reconstruction error wins. This recovers multiple roots to
machine precision instead of the eps^(1/m) accuracy of the raw iterates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import kernels
from .errors import NoConvergence, NonFiniteInput
from .multiset import CostMatrix

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200

# single-linkage thresholds tried when grouping root iterates, coarse first;
# scaled by (1 + |root|). Coarse merges are safe because every grouping must
# survive coefficient reconstruction.
_CLUSTER_LADDER = (5e-1, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-10, 0.0)

# accept a root structure outright when its reconstruction error is below
# this, relative to the coefficient scale; otherwise try deflation peeling
_ACCEPT_REL = 1e-11

# total candidate evaluations allowed in the peeling fallback
_PEEL_BUDGET = 400


@dataclass(frozen=True)
class PowerSums:
    """Power sums E_1..E_N of a multiset of complex scalars."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("power sums must be a nonempty vector")
        if not np.all(np.isfinite(v)):
            raise NonFiniteInput("power sums must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class MonicPoly:
    """Coefficients a_1..a_N of t^N + sum_n (-1)^n a_n t^(N-n).

    a_n is the n-th elementary symmetric polynomial of the roots.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coefficients must be a nonempty vector")
        if not np.all(np.isfinite(c)):
            raise NonFiniteInput("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __len__(self):
        return len(self.coeffs)

    def descending(self) -> np.ndarray:
        """Standard descending coefficients [1, -a_1, +a_2, ...]."""
        n = len(self.coeffs)
        out = np.empty(n + 1, dtype=complex)
        out[0] = 1.0
        sign = -1.0
        for k in range(1, n + 1):
            out[k] = sign * self.coeffs[k - 1]
            sign = -sign
        return out


def newton_girard(power_sums) -> MonicPoly:
    """Convert power sums E_1..E_N into elementary symmetric coefficients."""
    values = power_sums.values if isinstance(power_sums, PowerSums) else power_sums
    return MonicPoly(kernels.impl.newton_girard(np.asarray(values, dtype=complex)))


def power_sums_from_roots(roots, count: int | None = None) -> PowerSums:
    """E_n = sum_r r^n for n = 1..count (count defaults to len(roots))."""
    r = np.asarray(list(roots), dtype=complex)
    n = len(r) if count is None else int(count)
    return PowerSums(kernels.impl.power_sums(r, n))


def assignment_min_cost(cost) -> tuple:
    """Optimal assignment on a square cost matrix.

    Returns ``(permutation, total_cost)`` where ``permutation[i]`` is the
    column assigned to row ``i``.
    """
    entries = cost.entries if isinstance(cost, CostMatrix) else CostMatrix(np.asarray(cost)).entries
    rows, cols = linear_sum_assignment(entries)
    perm = [0] * len(cols)
    for r, c in zip(rows, cols):
        perm[r] = int(c)
    return tuple(perm), float(entries[rows, cols].sum())


def monic_roots(poly, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """All N roots (with multiplicity) of a monic polynomial.

    The residual of every returned root satisfies
    ``|p(r)| <= tol * (1 + max|coeff|)`` and equal roots are returned as
    exactly equal values.

    Raises :class:`NoConvergence` when the simultaneous iteration stalls;
    callers may retry with a relaxed ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    coeffs = poly.coeffs if isinstance(poly, MonicPoly) else MonicPoly(poly).coeffs
    c = MonicPoly(coeffs).descending()
    return _solve(c, tol, max_iter, depth=0, budget=[_PEEL_BUDGET])


# ---------------------------------------------------------------------------
# root post-processing helpers


def _polyval(c, x):
    p = c[0]
    for k in range(1, len(c)):
        p = p * x + c[k]
    return p


def _deriv(c):
    n = len(c) - 1
    return np.array([c[k] * (n - k) for k in range(n)], dtype=complex)


def _newton(c, dc, z, steps=60):
    for _ in range(steps):
        f = _polyval(c, z)
        if f == 0:
            break
        df = _polyval(dc, z)
        if df == 0:
            break
        step = f / df
        z = z - step
        if abs(step) <= 2e-16 * (1.0 + abs(z)):
            break
    return z


def _deflate(c, root):
    """Synthetic division of a monic polynomial by (t - root)."""
    out = np.empty(len(c) - 1, dtype=complex)
    acc = c[0]
    for k in range(len(c) - 1):
        out[k] = acc
        acc = c[k + 1] + root * acc
    return out


def _partitions(z):
    """Distinct single-linkage groupings of the iterates over the ladder."""
    n = len(z)
    dist = np.abs(z[:, None] - z[None, :])
    lim = 1.0 + np.minimum(np.abs(z)[:, None], np.abs(z)[None, :])
    seen, parts = set(), []
    for thr in _CLUSTER_LADDER:
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in range(n):
            for j in range(i + 1, n):
                if dist[i, j] <= thr * lim[i, j]:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[ri] = rj
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        key = tuple(sorted(tuple(g) for g in groups.values()))
        if key not in seen:
            seen.add(key)
            parts.append(list(groups.values()))
        if len(groups) == n:
            break
    return parts


def _recon_err(roots, c):
    return float(np.max(np.abs(kernels.impl.coeffs_from_roots(roots) - c)))


def _refine_partition(z, c, groups):
    """Roots under a multiplicity hypothesis given by ``groups``.

    Multiple roots are refined on the (m-1)-th derivative and deflated out;
    simple roots are then polished against the deflated polynomial, which
    decouples them from the ill-conditioning of nearby multiple roots.
    """
    reps = {}
    multiple = []
    for g in groups:
        m = len(g)
        zc = complex(np.mean([z[i] for i in g]))
        if m >= 2:
            q = c
            for _ in range(m - 1):
                q = _deriv(q)
            zc = _newton(q, _deriv(q), zc)
            multiple.append((zc, m))
        reps[id(g)] = zc
    cd = c
    for zc, m in multiple:
        for _ in range(m):
            cd = _deflate(cd, zc)
    final = np.empty(len(z), dtype=complex)
    dcd = _deriv(cd) if len(cd) > 1 else None
    for g in groups:
        zc = reps[id(g)]
        if len(g) == 1 and dcd is not None:
            zc = _newton(cd, dcd, zc)
        for i in g:
            final[i] = zc
    return final


def _solve(c, tol, max_iter, depth, budget):
    n = len(c) - 1
    if n == 0:
        return np.empty(0, dtype=complex)
    if n == 1:
        return np.array([-c[1]])
    z, ok, _it = kernels.impl.aberth_roots(c, tol, max_iter)
    if not ok:
        raise NoConvergence(max_iter)
    scale = max(1.0, float(np.max(np.abs(c))))
    best_r, best_e = None, math.inf
    partitions = _partitions(z)
    for groups in partitions:
        r = _refine_partition(z, c, groups)
        e = _recon_err(r, c)
        if e < best_e:
            best_r, best_e = r, e
    if best_e <= _ACCEPT_REL * scale or depth >= 8 or budget[0] <= 0:
        return best_r
    # Peeling fallback for overlapping clusters: hypothesise a multiplicity-k
    # root located at a root of p^(k-1), deflate it, solve the rest
    # recursively, and keep whichever structure reconstructs best.
    for k in range(n, 1, -1):
        q = c
        for _ in range(k - 1):
            q = _deriv(q)
        if len(q) < 2:
            continue
        try:
            candidates = _solve(q / q[0], tol, max_iter, depth + 1, [40])
        except NoConvergence:
            continue
        uniq = []
        for zc in candidates:
            if all(abs(zc - u) > 1e-12 * (1.0 + abs(zc)) for u in uniq):
                uniq.append(zc)
        for zc in uniq:
            if budget[0] <= 0:
                break
            budget[0] -= 1
            cd = c
            for _ in range(k):
                cd = _deflate(cd, zc)
            try:
                rest = _solve(cd, tol, max_iter, depth + 1, budget)
            except NoConvergence:
                continue
            r = np.concatenate([np.full(k, zc), rest])
            e = _recon_err(r, c)
            if e < best_e:
                best_r, best_e = r, e
    return best_r
