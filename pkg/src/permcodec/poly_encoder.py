"""Monomial (power-sum multi-symmetric) multiset encoder.

phi maps a vector x to all monomials x_1^k_1 * ... * x_D^k_D with total
degree 1..N; summing phi over the multiset gives an injective latent of
dimension C(N+D, D) - 1. The companion weight vectors psi(z, n) reproduce the
projected moments (z.x)^n as inner products with the latent, from which a
monic polynomial with roots {z.x : x in X} can be assembled at any direction
z. A shifted variant supports multisets of fewer than N elements by padding
with a sentinel outside the data box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import kernels
from .errors import ElementOutsideBox, NonFiniteInput, SizeMismatch, SizeOverflow
from .multiset import Multiset
from .numerics import MonicPoly, PowerSums, newton_girard

# refuse exponent tables beyond this many rows (~hundreds of MB of table data)
MAX_TABLE_ROWS = 5_000_000


@dataclass(frozen=True)
class ExponentIndex:
    """Precomputed exponent table for capacity N and dimension D.

    Rows are ordered by total degree ascending, then k_1 descending, then k_2
    descending, ... — the layout with degree-1 rows first, so for N=2, D=2 the
    rows are (1,0), (0,1), (2,0), (1,1), (0,2). ``axes``/``parents`` encode
    each row as one multiplication on an earlier row, and ``mult_coeff`` holds
    the multinomial weight used by psi. Immutable and shareable.
    """

    n_max: int
    dim: int
    exponents: np.ndarray
    degrees: np.ndarray
    mult_coeff: np.ndarray
    axes: np.ndarray
    parents: np.ndarray
    degree_starts: np.ndarray

    def __len__(self):
        return self.exponents.shape[0]

    @property
    def tuples(self) -> list:
        return [tuple(row) for row in self.exponents.tolist()]


@dataclass(frozen=True)
class PolyLatent:
    """Latent vector of the monomial encoder.

    ``shifted`` marks the variable-size variant; ``sentinel`` is the padding
    vector x0 and ``box`` the (lo, hi) data bounds it was derived from. The
    box travels in memory only, not in the JSON schema.
    """

    values: np.ndarray
    n_max: int
    dim: int
    shifted: bool = False
    sentinel: Optional[tuple] = None
    box: Optional[tuple] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(v)):
            raise NonFiniteInput("latent values must be finite")
        expected = math.comb(self.n_max + self.dim, self.dim) - 1
        if v.shape != (expected,):
            raise SizeMismatch(f"latent length {v.shape} != C(N+D,D)-1 = {expected}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)


def _compositions_desc(total: int, parts: int):
    """All `parts`-tuples of nonnegative ints summing to `total`, in
    lexicographically descending order (k_1 desc, then k_2 desc, ...)."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions_desc(total - head, parts - 1):
            yield (head,) + rest


@lru_cache(maxsize=None)
def exponent_index(n_max: int, dim: int) -> ExponentIndex:
    """Exponent table for capacity ``n_max`` and dimension ``dim``."""
    if n_max < 1 or dim < 1:
        raise ValueError("need N >= 1 and D >= 1")
    size = math.comb(n_max + dim, dim) - 1
    if size > MAX_TABLE_ROWS:
        raise SizeOverflow(f"exponent table would need {size} rows")
    rows = []
    degree_starts = [0]
    for g in range(1, n_max + 1):
        rows.extend(_compositions_desc(g, dim))
        degree_starts.append(len(rows))
    assert len(rows) == size
    position = {k: i for i, k in enumerate(rows)}
    exps = np.array(rows, dtype=np.int64)
    degrees = exps.sum(axis=1)
    axes = np.empty(size, dtype=np.int32)
    parents = np.empty(size, dtype=np.int32)
    coeff = np.empty(size, dtype=float)
    for i, k in enumerate(rows):
        d0 = next(d for d in range(dim) if k[d] > 0)
        axes[i] = d0
        if degrees[i] == 1:
            parents[i] = -1
        else:
            parent = list(k)
            parent[d0] -= 1
            parents[i] = position[tuple(parent)]
        c = math.factorial(int(degrees[i]))
        for kd in k:
            c //= math.factorial(kd)
        coeff[i] = float(c)
    for arr in (exps, degrees, axes, parents, coeff):
        arr.setflags(write=False)
    return ExponentIndex(
        n_max=n_max,
        dim=dim,
        exponents=exps,
        degrees=degrees,
        mult_coeff=coeff,
        axes=axes,
        parents=parents,
        degree_starts=np.array(degree_starts, dtype=np.int64),
    )


def phi_poly(x, idx: ExponentIndex) -> np.ndarray:
    """Element encoding: all monomials of x over the exponent table."""
    x = np.asarray(x, dtype=float)
    if x.shape != (idx.dim,):
        raise SizeMismatch(f"expected a vector of dimension {idx.dim}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("element coordinates must be finite")
    return kernels.impl.monomials(x, idx.axes, idx.parents)


def encode_poly(x: Multiset, n_max: int) -> PolyLatent:
    """Latent of an exactly-N multiset: sum of phi over canonical order."""
    if x.size != n_max:
        raise SizeMismatch(
            f"multiset has {x.size} elements, encoder capacity is {n_max}; "
            "use shift_encode for smaller multisets"
        )
    idx = exponent_index(n_max, x.dim)
    rows = np.stack([kernels.impl.monomials(np.asarray(e), idx.axes, idx.parents) for e in x])
    return PolyLatent(values=np.add.reduce(rows, axis=0), n_max=n_max, dim=x.dim)


def psi(z, n: int, idx: ExponentIndex) -> np.ndarray:
    """Weight vector with <psi(z, n), phi(x)> = (z.x)^n.

    Rows of total degree n carry multinomial(n; k) * z^k; all others are 0.
    """
    if not 1 <= n <= idx.n_max:
        raise ValueError(f"need 1 <= n <= {idx.n_max}")
    z = np.asarray(z, dtype=float)
    mono = kernels.impl.monomials(z, idx.axes, idx.parents)
    out = np.zeros(len(idx))
    lo, hi = idx.degree_starts[n - 1], idx.degree_starts[n]
    out[lo:hi] = idx.mult_coeff[lo:hi] * mono[lo:hi]
    return out


def moments(z, latent: PolyLatent) -> PowerSums:
    """Projected moments E_n(z) = sum_x (z.x)^n for n = 1..N, linear in the
    latent."""
    if latent.shifted:
        raise ValueError("moments need an unshifted latent")
    z = np.asarray(z, dtype=float)
    idx = exponent_index(latent.n_max, latent.dim)
    mono = kernels.impl.monomials(z, idx.axes, idx.parents)
    weighted = idx.mult_coeff * mono * latent.values
    starts = idx.degree_starts
    vals = np.array(
        [weighted[starts[n - 1]:starts[n]].sum() for n in range(1, latent.n_max + 1)],
        dtype=complex,
    )
    return PowerSums(vals)


def poly_at(z, latent: PolyLatent) -> MonicPoly:
    """Monic polynomial whose roots are {z.x : x in X}, from the latent
    alone."""
    return newton_girard(moments(z, latent))


def sentinel_for_box(box, dim: int) -> tuple:
    """Padding vector: upper corner of the box plus 1 in every coordinate."""
    lo, hi = float(box[0]), float(box[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError("box must be finite with lo <= hi")
    return (hi + 1.0,) * dim


def shift_encode(x: Multiset, n_max: int, box) -> PolyLatent:
    """Variable-size latent for |X| <= N elements inside ``box``.

    Encodes sum of phi(x) minus |X| * phi(x0) with the sentinel x0 outside
    the box, which equals the full-size latent of X padded with sentinel
    copies, shifted by the constant -N * phi(x0).
    """
    if x.size > n_max:
        raise SizeMismatch(f"multiset has {x.size} elements, capacity is {n_max}")
    lo, hi = float(box[0]), float(box[1])
    x0 = sentinel_for_box(box, x.dim)
    arr = x.as_array()
    if np.any(arr < lo) or np.any(arr > hi):
        raise ElementOutsideBox(f"all elements must lie in [{lo}, {hi}]^D")
    idx = exponent_index(n_max, x.dim)
    rows = np.stack([kernels.impl.monomials(np.asarray(e), idx.axes, idx.parents) for e in x])
    total = np.add.reduce(rows, axis=0)
    shifted = total - x.size * phi_poly(np.asarray(x0), idx)
    return PolyLatent(
        values=shifted,
        n_max=n_max,
        dim=x.dim,
        shifted=True,
        sentinel=x0,
        box=(lo, hi),
    )
