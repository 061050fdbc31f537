"""Low-dimensional codec for identifiable multisets.

An identifier is a continuous scalar map l whose values uniquely label the
distinct elements of a multiset. The element encoder lifts x to the complex
vector r(x) = x + l(x) * j (the same imaginary part on every coordinate) and
stacks its elementwise powers r, r^2, ..., r^N into a D x N matrix; the
multiset latent is the elementwise sum, 2DN reals in total. Row d of the
latent holds the power sums of the scalar multiset {x_d + l(x) j}, so rows
invert independently (Newton-Girard plus root finding); sorting every row by
imaginary part - the shared identifier values - aligns the rows so the n-th
entries reassemble the original vectors.

The default identifier weights coordinates by logs of the first D primes,
which labels rational vectors injectively: equal values would force a
nontrivial multiplicative relation between distinct primes.

Also here: the pairwise coordinate-pair encoder used as a negative control.
It is permutation-invariant but provably not injective, and the known
colliding pair of 3-vector multisets is exercised in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    DecodeVerificationFailed,
    ElementOutsideBox,
    EmptyInput,
    IdentifierCollision,
    NonFiniteInput,
    SentinelLeak,
    SizeMismatch,
)
from .multiset import Multiset, canonicalize
from .numerics import PowerSums, monic_roots, newton_girard, power_sums_from_roots
from .poly_encoder import sentinel_for_box

# identifier values within this (times scale) count as equal at decode
COLLISION_REL = 1e-7
# re-encode verification tolerance, relative to 1 + |Z|
VERIFY_REL = 1e-6


def _primes(count: int) -> list:
    out, candidate = [], 2
    while len(out) < count:
        if all(candidate % p for p in out):
            out.append(candidate)
        candidate += 1
    return out


@dataclass(frozen=True)
class Identifier:
    """Continuous scalar labelling function for multiset elements."""

    kind: str
    eval: Callable[[np.ndarray], float] = field(repr=False)

    def __call__(self, x) -> float:
        return float(self.eval(np.asarray(x, dtype=float)))


def identifier_prime_log(x) -> float:
    """l(x) = sum_d x_d * ln(p_d) with p_d the d-th prime (2, 3, 5, ...)."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("identifier input must be finite")
    weights = np.log(np.array(_primes(len(x)), dtype=float))
    return float(np.dot(x, weights))


PRIME_LOG = Identifier(kind="prime_log", eval=identifier_prime_log)


def constant_identifier(value: float = 0.0) -> Identifier:
    """Degenerate identifier; useful for exercising collision handling."""
    return Identifier(kind="custom", eval=lambda x: float(value))


@dataclass(frozen=True)
class IdentLatent:
    """D x N complex latent of the identifier codec (2DN reals on the wire).

    ``shifted``/``sentinel``/``box`` mirror the variable-size support of the
    monomial codec.
    """

    matrix: np.ndarray
    n_max: int
    dim: int
    identifier_kind: str = "prime_log"
    shifted: bool = False
    sentinel: Optional[tuple] = None
    box: Optional[tuple] = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.dim, self.n_max):
            raise SizeMismatch(f"latent shape {m.shape} != ({self.dim}, {self.n_max})")
        if not np.all(np.isfinite(m)):
            raise NonFiniteInput("latent entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def interleaved(self) -> np.ndarray:
        """Row-major real/imag interleaved flat view, 2DN reals."""
        flat = self.matrix.reshape(-1)
        out = np.empty(2 * flat.size)
        out[0::2] = flat.real
        out[1::2] = flat.imag
        return out


@dataclass(frozen=True)
class PairwiseLatent:
    """D x D x N latent of the coordinate-pair encoder (negative control)."""

    tensor: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.tensor, dtype=float)
        if t.ndim != 3 or t.shape[0] != t.shape[1]:
            raise SizeMismatch("pairwise latent must have shape (D, D, N)")
        t.setflags(write=False)
        object.__setattr__(self, "tensor", t)


def phi_ident(x, n_max: int, ident: Identifier = PRIME_LOG) -> np.ndarray:
    """Element encoding: columns r(x)^1 .. r(x)^N with r(x) = x + l(x) j."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("element coordinates must be finite")
    r = x + 1j * ident(x)
    out = np.empty((len(x), n_max), dtype=complex)
    acc = np.ones(len(x), dtype=complex)
    for n in range(n_max):
        acc = acc * r
        out[:, n] = acc
    return out


def encode_ident(x: Multiset, n_max: int, ident: Identifier = PRIME_LOG) -> IdentLatent:
    """Latent of an exactly-N multiset: sum of phi_ident in canonical order."""
    if x.size != n_max:
        raise SizeMismatch(
            f"multiset has {x.size} elements, encoder capacity is {n_max}; "
            "use shift_encode_ident for smaller multisets"
        )
    total = np.zeros((x.dim, n_max), dtype=complex)
    for element in x:
        total = total + phi_ident(np.asarray(element), n_max, ident)
    return IdentLatent(matrix=total, n_max=n_max, dim=x.dim, identifier_kind=ident.kind)


def deepsets1d_invert(power_sums) -> np.ndarray:
    """Scalar multiset from its power sums: Newton-Girard then root solving."""
    ps = power_sums if isinstance(power_sums, PowerSums) else PowerSums(power_sums)
    return monic_roots(newton_girard(ps))


def _row_multisets(latent: IdentLatent) -> np.ndarray:
    rows = np.empty((latent.dim, latent.n_max), dtype=complex)
    for d in range(latent.dim):
        rows[d] = deepsets1d_invert(latent.matrix[d])
    return rows


def sortvec_decode(latent: IdentLatent) -> Multiset:
    """Assemble the multiset from per-row inversions.

    Each row is sorted by imaginary part (the identifier values); position n
    of every sorted row belongs to one element, whose coordinates are the
    real parts. Ties in the imaginary part are only sound when the tied
    elements are identical; tied groups whose real parts disagree raise
    :class:`IdentifierCollision` because the input cannot have been
    identifiable.
    """
    if latent.shifted:
        raise ValueError("sortvec_decode needs an unshifted latent; use decode_variable_ident")
    rows = _row_multisets(latent)
    scale = 1.0 + float(np.max(np.abs(rows.imag))) if rows.size else 1.0
    tol = COLLISION_REL * scale
    coords = np.empty((latent.dim, latent.n_max))
    order_imag = None
    for d in range(latent.dim):
        idx = np.lexsort((rows[d].real, rows[d].imag))
        sorted_row = rows[d][idx]
        coords[d] = sorted_row.real
        if order_imag is None:
            order_imag = sorted_row.imag
    # within a group of (nearly) equal identifiers the element must be one
    # repeated vector: every row has to be constant across the group
    start = 0
    for n in range(1, latent.n_max + 1):
        if n == latent.n_max or order_imag[n] - order_imag[start] > tol:
            if n - start > 1:
                block = coords[:, start:n]
                spread = float(np.max(block.max(axis=1) - block.min(axis=1)))
                if spread > tol:
                    raise IdentifierCollision(
                        f"{n - start} elements share an identifier but differ by {spread:.3e}"
                    )
            start = n
    return canonicalize([tuple(coords[:, n]) for n in range(latent.n_max)], capacity=latent.n_max)


def decode_ident(latent: IdentLatent, ident: Identifier = PRIME_LOG) -> Multiset:
    """sortvec decoding with verification by re-encoding."""
    result = sortvec_decode(latent)
    norm = float(np.linalg.norm(latent.matrix))
    residual = float(
        np.linalg.norm(encode_ident(result, latent.n_max, ident).matrix - latent.matrix)
    )
    if residual > VERIFY_REL * (1.0 + norm):
        raise DecodeVerificationFailed(
            f"re-encode residual {residual:.3e} above {VERIFY_REL * (1.0 + norm):.3e}"
        )
    return result


def shift_encode_ident(x: Multiset, n_max: int, box, ident: Identifier = PRIME_LOG) -> IdentLatent:
    """Variable-size latent for |X| <= N elements inside ``box``.

    The sentinel's identifier must differ from every element's identifier,
    otherwise the padded multiset would not be identifiable.
    """
    if x.size > n_max:
        raise SizeMismatch(f"multiset has {x.size} elements, capacity is {n_max}")
    lo, hi = float(box[0]), float(box[1])
    x0 = sentinel_for_box(box, x.dim)
    arr = x.as_array()
    if np.any(arr < lo) or np.any(arr > hi):
        raise ElementOutsideBox(f"all elements must lie in [{lo}, {hi}]^D")
    l0 = ident(np.asarray(x0))
    for element in x:
        le = ident(np.asarray(element))
        if abs(le - l0) <= 1e-9 * (1.0 + abs(l0)):
            raise IdentifierCollision(
                f"sentinel identifier {l0!r} collides with element {element}"
            )
    total = np.zeros((x.dim, n_max), dtype=complex)
    for element in x:
        total = total + phi_ident(np.asarray(element), n_max, ident)
    shifted = total - x.size * phi_ident(np.asarray(x0), n_max, ident)
    return IdentLatent(
        matrix=shifted,
        n_max=n_max,
        dim=x.dim,
        identifier_kind=ident.kind,
        shifted=True,
        sentinel=x0,
        box=(lo, hi),
    )


def decode_variable_ident(latent: IdentLatent, ident: Identifier = PRIME_LOG, box=None) -> Multiset:
    """Invert the shifted identifier codec and strip sentinel padding."""
    if not latent.shifted or latent.sentinel is None:
        raise ValueError("decode_variable_ident needs a shifted latent with sentinel metadata")
    x0 = np.asarray(latent.sentinel, dtype=float)
    plain = IdentLatent(
        matrix=latent.matrix + latent.n_max * phi_ident(x0, latent.n_max, ident),
        n_max=latent.n_max,
        dim=latent.dim,
        identifier_kind=latent.identifier_kind,
    )
    padded = decode_ident(plain, ident)
    scale = 1.0 + float(np.linalg.norm(x0))
    keep = [
        element
        for element in padded
        if np.linalg.norm(np.asarray(element) - x0) > VERIFY_REL * scale
    ]
    if not keep:
        raise EmptyInput("decode removed every element as sentinel padding")
    box = box if box is not None else latent.box
    hi = float(x0[0]) - 1.0
    slack = 1e-6 * (1.0 + abs(hi))
    for element in keep:
        arr = np.asarray(element)
        if np.any(arr > hi + slack) or (box is not None and np.any(arr < float(box[0]) - slack)):
            raise SentinelLeak(f"decoded element {element} lies outside the box")
    return canonicalize(keep, capacity=latent.n_max)


def encode_pairwise_baseline(x: Multiset, n_max: int) -> PairwiseLatent:
    """Coordinate-pair power encoder (negative control, not injective).

    Entry (d1, d2, n) sums Re((x_d1 + x_d2 j)^n) for d2 > d1 and the
    imaginary part for d1 > d2; the diagonal stays zero. Distinct multisets
    exist that share this latent.
    """
    if x.size != n_max:
        raise SizeMismatch(f"multiset has {x.size} elements, encoder capacity is {n_max}")
    if x.dim < 2:
        raise ValueError("pairwise baseline needs D >= 2")
    d = x.dim
    out = np.zeros((d, d, n_max))
    for element in x:
        for d1 in range(d):
            for d2 in range(d):
                if d1 == d2:
                    continue
                base = complex(element[d1], element[d2])
                acc = 1 + 0j
                for n in range(n_max):
                    acc = acc * base
                    out[d1, d2, n] += acc.real if d2 > d1 else acc.imag
    return PairwiseLatent(tensor=out)
