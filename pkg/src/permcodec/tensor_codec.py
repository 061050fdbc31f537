"""Permutation-invariant machinery for dense k-tensors.

A tensor of order K on N entities with D-dimensional cells is permuted by
relabelling all K entity axes simultaneously. When an equivariant labelling
of the entities exists with pairwise distinct labels (the tensor is then
called identifiable), two canonical constructions become available:

* a recursive labelled-set form S(T) that is equal across exactly the
  permuted copies of T, giving an exact congruence test, and
* a nested sum encoder that folds the entity axes one at a time, encoding at
  every level the multiset of (label, inner-encoding) pairs with either the
  identifier codec (rational mode) or the monomial codec (real mode).

The default labelling reads the hyper-diagonal cell of each entity through
the prime-log identifier, which is equivariant by construction; callers with
colliding diagonals can supply their own labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import BadPermutation, NonFiniteInput, NotIdentifiable, SizeOverflow, TooLargeForFallback
from .ident_codec import identifier_prime_log, _primes
from .poly_encoder import exponent_index
from . import kernels

# labels closer than this are treated as colliding
LABEL_GAP = 1e-9
# brute-force congruence search is refused above this many entities
BRUTE_FORCE_MAX_N = 8
# real mode refuses output widths beyond this
REAL_MODE_MAX_DIM = 1_000_000
# latent_dims reports SizeOverflow beyond this
DIMS_MAX = 1e15


@dataclass(frozen=True)
class Tensor:
    """Dense order-K tensor: shape [N]^K x D."""

    data: np.ndarray
    order: int
    entities: int
    dim: int

    def __post_init__(self):
        a = np.asarray(self.data, dtype=float)
        expected = (self.entities,) * self.order + (self.dim,)
        if self.order < 1 or a.shape != expected:
            raise ValueError(f"tensor shape {a.shape} != {expected}")
        if not np.all(np.isfinite(a)):
            raise NonFiniteInput("tensor entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)


def tensor_from_array(data, order: int | None = None) -> Tensor:
    """Wrap an array as a Tensor, inferring (N, K, D) from its shape."""
    a = np.asarray(data, dtype=float)
    k = (a.ndim - 1) if order is None else int(order)
    if a.ndim != k + 1:
        raise ValueError(f"array of ndim {a.ndim} cannot be an order-{k} tensor")
    n = a.shape[0]
    if any(s != n for s in a.shape[:k]):
        raise ValueError("all entity axes must have equal length")
    return Tensor(data=a, order=k, entities=n, dim=a.shape[-1])


@dataclass(frozen=True)
class NodeLabels:
    """Per-entity labels (N x M) plus a pairwise-distinctness flag."""

    rows: np.ndarray
    identifiable: bool

    def __post_init__(self):
        r = np.asarray(self.rows, dtype=float)
        if r.ndim != 2:
            raise ValueError("labels must be an N x M matrix")
        r.setflags(write=False)
        object.__setattr__(self, "rows", r)


@dataclass(frozen=True)
class NestedSet:
    """Canonical recursive labelled-set form of an identifiable tensor."""

    root: tuple
    entities: int
    order: int
    dim: int


def permute_tensor(t: Tensor, perm) -> Tensor:
    """Relabel entities: output[n1..nK] = input[perm[n1]..perm[nK]]."""
    p = list(int(i) for i in perm)
    if sorted(p) != list(range(t.entities)):
        raise BadPermutation(f"{perm!r} is not a permutation of 0..{t.entities - 1}")
    data = t.data[np.ix_(*([p] * t.order))]
    return Tensor(data=data, order=t.order, entities=t.entities, dim=t.dim)


def tensor_identifier_default(t: Tensor) -> NodeLabels:
    """Scalar label per entity: prime-log of its hyper-diagonal cell.

    The diagonal cells permute along with the entities, so this labelling is
    equivariant; it is identifiable whenever the values stay pairwise
    separated.
    """
    diag = np.empty((t.entities, t.dim))
    for n in range(t.entities):
        diag[n] = t.data[(n,) * t.order]
    values = np.array([[identifier_prime_log(row)] for row in diag])
    flat = np.sort(values[:, 0])
    identifiable = bool(t.entities == 1 or np.min(np.diff(flat)) > LABEL_GAP)
    return NodeLabels(rows=values, identifiable=identifiable)


def _label_key(labels: NodeLabels, n: int) -> tuple:
    return tuple(labels.rows[n].tolist())


def build_S(t: Tensor, labels: NodeLabels) -> NestedSet:
    """Recursive canonical set: level k pairs each entity's label with the
    substructure below it, sorted by label so order carries no information."""
    if not labels.identifiable:
        raise NotIdentifiable("labels must be pairwise distinct to build S(T)")
    if labels.rows.shape[0] != t.entities:
        raise ValueError("label count must match entity count")
    keys = [_label_key(labels, n) for n in range(t.entities)]

    def build(prefix: tuple) -> tuple:
        if len(prefix) == t.order:
            return tuple(t.data[prefix].tolist())
        return tuple(sorted((keys[n], build(prefix + (n,))) for n in range(t.entities)))

    return NestedSet(root=build(()), entities=t.entities, order=t.order, dim=t.dim)


def congruent_bruteforce(t: Tensor, other: Tensor) -> bool:
    """Exhaustive search for a permutation with other == perm(t)."""
    if t.entities > BRUTE_FORCE_MAX_N:
        raise TooLargeForFallback(f"refusing {math.factorial(t.entities)} permutations")
    for p in permutations(range(t.entities)):
        if np.array_equal(permute_tensor(t, p).data, other.data):
            return True
    return False


def congruent(t: Tensor, other: Tensor) -> bool:
    """True iff the tensors are equal up to a simultaneous entity relabeling.

    Uses the canonical set forms when both tensors are identifiable under the
    default labelling, and falls back to brute force otherwise.
    """
    if (t.entities, t.order, t.dim) != (other.entities, other.order, other.dim):
        raise ValueError("congruence needs matching (N, K, D)")
    la, lb = tensor_identifier_default(t), tensor_identifier_default(other)
    if la.identifiable and lb.identifiable:
        return build_S(t, la).root == build_S(other, lb).root
    return congruent_bruteforce(t, other)


def latent_dims(order: int, entities: int, label_dim: int, dim: int, mode: str) -> tuple:
    """Per-level latent dimensions (D_1..D_K) of the nested encoder.

    Backward recursion from D_K = D: rational labels give
    D_k = 2 (M + D_{k+1}) N, real labels D_k = C(N + D_{k+1}, N) - 1.
    """
    if order < 1 or entities < 1 or label_dim < 1 or dim < 1:
        raise ValueError("all sizes must be positive")
    if mode not in ("rational", "real"):
        raise ValueError("mode must be 'rational' or 'real'")
    dims = [0] * order
    dims[order - 1] = dim
    for k in range(order - 2, -1, -1):
        nxt = dims[k + 1]
        if mode == "rational":
            dims[k] = 2 * (label_dim + nxt) * entities
        else:
            dims[k] = math.comb(entities + nxt, entities) - 1
        if dims[k] > DIMS_MAX:
            raise SizeOverflow(f"D_{k + 1} = {dims[k]} exceeds {DIMS_MAX:g}")
    return tuple(dims)


def encoder_level_dims(order: int, entities: int, label_dim: int, dim: int, mode: str) -> tuple:
    """Widths (w_0..w_K) realised by the nested encoder itself.

    w_K = D is the raw cell width and w_{k-1} the output width of the level-k
    encoder on (M + w_k)-dimensional pairs; w_0 is the final output width. In
    rational mode w_k equals the D_k of :func:`latent_dims` for k in [K]; in
    real mode the realised widths also count the label block, which the
    nominal formula leaves out.
    """
    if mode not in ("rational", "real"):
        raise ValueError("mode must be 'rational' or 'real'")
    widths = [0] * (order + 1)
    widths[order] = dim
    for k in range(order - 1, -1, -1):
        inner = label_dim + widths[k + 1]
        if mode == "rational":
            widths[k] = 2 * inner * entities
        else:
            widths[k] = math.comb(entities + inner, inner) - 1
        if widths[k] > DIMS_MAX:
            raise SizeOverflow(f"level-{k + 1} width {widths[k]} exceeds {DIMS_MAX:g}")
    return tuple(widths)


def _encode_level_rational(items: np.ndarray, entities: int, label_dim: int) -> np.ndarray:
    """Identifier-codec sum over rows of ``items`` ((N, M + w) reals).

    The label block doubles as the identifier: distinct labels give distinct
    prime-log values, so the pair multiset is identifiable. Output is the
    complex latent flattened row-major with real/imag interleaved.
    """
    width = items.shape[1]
    weights = np.log(np.array(_primes(label_dim), dtype=float))
    order = np.lexsort(tuple(items[:, c] for c in range(width - 1, -1, -1)))
    total = np.zeros((width, entities), dtype=complex)
    for row in items[order]:
        ell = float(np.dot(row[:label_dim], weights))
        r = row + 1j * ell
        acc = np.ones(width, dtype=complex)
        for n in range(entities):
            acc = acc * r
            total[:, n] += acc
    flat = total.reshape(-1)
    out = np.empty(2 * flat.size)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out


def _encode_level_real(items: np.ndarray, entities: int) -> np.ndarray:
    """Monomial-codec sum over rows of ``items`` ((N, M + w) reals)."""
    width = items.shape[1]
    idx = exponent_index(entities, width)
    order = np.lexsort(tuple(items[:, c] for c in range(width - 1, -1, -1)))
    total = np.zeros(len(idx))
    for row in items[order]:
        total = total + kernels.impl.monomials(row, idx.axes, idx.parents)
    return total


def encode_tensor(t: Tensor, labels: NodeLabels | None = None, mode: str = "rational") -> np.ndarray:
    """Nested sum encoding of an identifiable tensor.

    Folds axes from the innermost out: at level k every length-N fibre of
    (label, inner-encoding) pairs is encoded and summed, with the pairs
    sorted by value first so the result is bit-exactly permutation-invariant.
    Returns the level-1 sum as a real vector of width
    ``encoder_level_dims(...)[0]``.
    """
    if mode not in ("rational", "real"):
        raise ValueError("mode must be 'rational' or 'real'")
    if labels is None:
        labels = tensor_identifier_default(t)
    if not labels.identifiable:
        raise NotIdentifiable("encode_tensor needs pairwise distinct labels")
    if labels.rows.shape[0] != t.entities:
        raise ValueError("label count must match entity count")
    label_dim = labels.rows.shape[1]
    widths = encoder_level_dims(t.order, t.entities, label_dim, t.dim, mode)
    if mode == "real" and widths[0] > REAL_MODE_MAX_DIM:
        raise SizeOverflow(f"real-mode output width {widths[0]} exceeds {REAL_MODE_MAX_DIM}")
    n, k_order = t.entities, t.order
    beta = t.data.reshape((n,) * k_order + (t.dim,))
    for k in range(k_order, 0, -1):
        prefix_shape = (n,) * (k - 1)
        new = np.empty(prefix_shape + (widths[k - 1],))
        for prefix in np.ndindex(prefix_shape):
            fibre = beta[prefix]  # (N, w_k)
            items = np.concatenate([labels.rows, fibre], axis=1)
            if mode == "rational":
                new[prefix] = _encode_level_rational(items, n, label_dim)
            else:
                new[prefix] = _encode_level_real(items, n)
        beta = new
    return beta.reshape(widths[0])
