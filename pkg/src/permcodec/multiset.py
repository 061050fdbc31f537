"""Multiset value types, canonical ordering, matching distance and scalar
profiles.

Elements are stored in a canonical lexicographic order (coordinate 1 first,
then coordinate 2, ...) so that every downstream sum over elements is
bit-exactly invariant to the input ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapacityExceeded, EmptyInput, NonFiniteInput

# brute-force matching up to this size, Hungarian above
_BRUTE_FORCE_MAX = 6


@dataclass(frozen=True)
class Multiset:
    """Canonically ordered multiset of vectors in R^D.

    ``elements`` is a tuple of coordinate tuples, sorted lexicographically;
    duplicates are allowed and sit adjacently. Instances are built through
    :func:`canonicalize`, never mutated.
    """

    elements: tuple
    dim: int
    capacity: int

    @property
    def size(self) -> int:
        return len(self.elements)

    def as_array(self) -> np.ndarray:
        """Elements as an (n, D) float array in canonical order."""
        return np.array(self.elements, dtype=float).reshape(self.size, self.dim)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class ScalarProfile:
    """Order statistics of a scalar multiset.

    ``gap`` is the minimum distance between *distinct* values and is ``None``
    when all values are equal (the quantity is undefined there).
    """

    sorted_desc: tuple
    unique_count: int
    gap: Optional[float]
    diam: float


@dataclass(frozen=True)
class CostMatrix:
    """Square nonnegative cost matrix for the assignment kernel."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("cost matrix must be square")
        if not np.all(np.isfinite(e)):
            raise NonFiniteInput("cost matrix entries must be finite")
        if np.any(e < 0):
            raise ValueError("cost matrix entries must be nonnegative")
        object.__setattr__(self, "entries", e)


def canonicalize(raw_elements: Iterable[Sequence[float]], capacity: Optional[int] = None) -> Multiset:
    """Build a :class:`Multiset` from elements in any order.

    Sorting is value-based, so the result is identical (bit for bit) for every
    permutation of the input. Negative zeros are normalised to +0.0 so equal
    values share one representation.
    """
    elems = [tuple(float(c) + 0.0 for c in e) for e in raw_elements]
    if not elems:
        raise EmptyInput("multiset needs at least one element")
    dim = len(elems[0])
    if dim == 0 or any(len(e) != dim for e in elems):
        raise ValueError("all elements must share one positive dimension")
    if not all(math.isfinite(c) for e in elems for c in e):
        raise NonFiniteInput("element coordinates must be finite")
    cap = len(elems) if capacity is None else int(capacity)
    if len(elems) > cap:
        raise CapacityExceeded(f"{len(elems)} elements exceed capacity {cap}")
    elems.sort()
    return Multiset(elements=tuple(elems), dim=dim, capacity=cap)


def matching_distance(x: Multiset, y: Multiset) -> float:
    """Minimum-over-permutations root-sum-squared distance d_M.

    Returns ``inf`` when the sizes differ. Uses exhaustive search for small
    multisets and min-cost assignment on squared distances above that; both
    compute the same minimum.
    """
    if x.size != y.size or x.dim != y.dim:
        return math.inf
    a, b = x.as_array(), y.as_array()
    n = x.size
    d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
    if n <= _BRUTE_FORCE_MAX:
        best = min(sum(d2[i, p[i]] for i in range(n)) for p in permutations(range(n)))
    else:
        from .numerics import assignment_min_cost

        _, best = assignment_min_cost(CostMatrix(d2))
    return math.sqrt(max(best, 0.0))


def scalar_profile(values: Sequence[float]) -> ScalarProfile:
    """Sorted order, unique count, gap and diameter of a scalar multiset."""
    v = np.asarray(list(values), dtype=float)
    if v.size == 0:
        raise EmptyInput("profile needs at least one value")
    asc = np.sort(v)
    diffs = np.diff(asc)
    distinct = diffs[diffs > 0]
    unique_count = 1 + int((diffs > 0).sum())
    gap = float(distinct.min()) if distinct.size else None
    diam = float(asc[-1] - asc[0])
    return ScalarProfile(
        sorted_desc=tuple(asc[::-1].tolist()),
        unique_count=unique_count,
        gap=gap,
        diam=diam,
    )
