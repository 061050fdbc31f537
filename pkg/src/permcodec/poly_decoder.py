"""Inversion of the monomial multiset encoder.

Decoding picks a direction z* whose projections separate all distinct
elements (a random unit vector works almost surely; candidates are drawn from
a seeded generator and the one giving the most distinct roots wins). Sorted
roots of the latent's polynomial at z* and at axis-perturbed directions
z* + delta * e_d then yield every coordinate as a finite difference, because
for small enough delta the sort order of distinct projections cannot change.
Each decode is verified by re-encoding; failures retry with a fresh
separator.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DecodeVerificationFailed,
    EmptyInput,
    NonRealRoots,
    NoConvergence,
    PermcodecError,
    SentinelLeak,
    UnstableDelta,
)
from .multiset import Multiset, canonicalize, scalar_profile
from .numerics import DEFAULT_MAX_ITER, DEFAULT_TOL, monic_roots
from .poly_encoder import PolyLatent, encode_poly, exponent_index, phi_poly, poly_at

log = logging.getLogger("permcodec")

# imaginary parts below this (times scale) are rounding noise on real roots
IMAG_DISCARD_REL = 1e-6
# re-encode verification tolerance, relative to 1 + |latent|
VERIFY_REL = 1e-6
# coordinates at delta and delta/2 must agree to this, times root scale
CONSISTENCY_REL = 1e-7
# retries with a fresh separator after the first failed attempt
MAX_RETRIES = 4
# fallback step size when all roots coincide (any delta is sort-stable then)
FLAT_DELTA = 0.1

DEFAULT_CANDIDATES = 32


@dataclass(frozen=True)
class Separator:
    """A direction whose projections separate the distinct elements.

    ``unique_count`` is the number of distinct projected roots at ``z_star``
    and ``root_gap`` their minimum distinct spacing (0.0 when all roots
    coincide).
    """

    z_star: tuple
    unique_count: int
    root_gap: float


def parameterized_roots(
    z,
    latent: PolyLatent,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """The N real roots {z.x : x in X} of the latent's polynomial at z.

    Raises :class:`NonRealRoots` when the computed roots carry imaginary
    parts beyond rounding noise, which signals a vector that is not a valid
    encoding.
    """
    if latent.shifted:
        raise ValueError("parameterized roots need an unshifted latent")
    roots = monic_roots(poly_at(z, latent), tol=tol, max_iter=max_iter)
    scale = 1.0 + float(np.max(np.abs(roots))) if len(roots) else 1.0
    imag = float(np.max(np.abs(roots.imag))) if len(roots) else 0.0
    if imag > IMAG_DISCARD_REL * scale:
        raise NonRealRoots(f"max imaginary part {imag:.3e} exceeds {IMAG_DISCARD_REL * scale:.3e}")
    return roots.real.copy()


def find_separator(
    latent: PolyLatent,
    seed: int,
    candidates: int = DEFAULT_CANDIDATES,
) -> Separator:
    """Pick the best of ``candidates`` seeded random unit directions.

    Candidates are ranked by distinct-root count, ties broken by larger root
    gap. Directions that fail to separate distinct elements lie in finitely
    many hyperplanes, so random vectors succeed almost surely; the seed makes
    the search reproducible.
    """
    if candidates < 1:
        raise ValueError("need at least one candidate")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(candidates):
        z = rng.standard_normal(latent.dim)
        norm = float(np.linalg.norm(z))
        if norm < 1e-12:
            continue
        z /= norm
        profile = scalar_profile(parameterized_roots(z, latent))
        gap = profile.gap if profile.gap is not None else 0.0
        key = (profile.unique_count, gap)
        if best is None or key > best[0]:
            best = (key, z)
    (unique_count, gap), z = best
    return Separator(z_star=tuple(z.tolist()), unique_count=unique_count, root_gap=gap)


def _sorted_roots(z, latent, tol, max_iter):
    return np.sort(parameterized_roots(z, latent, tol=tol, max_iter=max_iter))[::-1]


def _coordinates_at(latent, z_star, s0, delta, tol, max_iter):
    dim = latent.dim
    cols = np.empty((latent.n_max, dim))
    for d in range(dim):
        z = np.array(z_star, dtype=float)
        z[d] += delta
        sd = _sorted_roots(z, latent, tol, max_iter)
        cols[:, d] = (sd - s0) / delta
    return cols


def recover_coordinates(latent: PolyLatent, sep: Separator, delta: float) -> Multiset:
    """Recover the multiset from sorted-root finite differences at ``sep``.

    The n-th sorted root of every perturbed direction tracks one and the same
    element, so column d of the recovered matrix is the d-th coordinate read
    off at step ``delta``. A second pass at ``delta / 2`` must agree to the
    consistency tolerance, otherwise :class:`UnstableDelta` is raised.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    tol, max_iter = DEFAULT_TOL, DEFAULT_MAX_ITER
    s0 = _sorted_roots(np.array(sep.z_star, dtype=float), latent, tol, max_iter)
    full = _coordinates_at(latent, sep.z_star, s0, delta, tol, max_iter)
    half = _coordinates_at(latent, sep.z_star, s0, delta / 2.0, tol, max_iter)
    scale = 1.0 + float(np.max(np.abs(s0)))
    drift = float(np.max(np.abs(full - half)))
    if drift > CONSISTENCY_REL * scale:
        raise UnstableDelta(f"coordinates drift by {drift:.3e} when halving delta={delta:g}")
    return canonicalize([tuple(row) for row in full], capacity=latent.n_max)


def _pick_delta(sep: Separator, max_root: float) -> float:
    if sep.unique_count > 1:
        return sep.root_gap / (4.0 * (1.0 + max_root))
    return FLAT_DELTA


def decode_poly(latent: PolyLatent, seed: int = 0) -> Multiset:
    """Invert the monomial encoder: separator search, coordinate recovery and
    verification by re-encoding.

    Retries with fresh separators before giving up; a persistent failure
    means the vector is outside the encoder's range or too ill-conditioned.
    """
    if latent.shifted:
        raise ValueError("decode_poly needs an unshifted latent; use decode_variable")
    norm = float(np.linalg.norm(latent.values))
    last: PermcodecError | None = None
    for attempt in range(MAX_RETRIES + 1):
        attempt_seed = seed + 7919 * attempt
        try:
            sep = find_separator(latent, attempt_seed)
            roots = parameterized_roots(np.array(sep.z_star), latent)
            delta = _pick_delta(sep, float(np.max(np.abs(roots))))
            result = recover_coordinates(latent, sep, delta)
            residual = float(np.linalg.norm(encode_poly(result, latent.n_max).values - latent.values))
            if residual <= VERIFY_REL * (1.0 + norm):
                return result
            last = DecodeVerificationFailed(
                f"re-encode residual {residual:.3e} above {VERIFY_REL * (1.0 + norm):.3e}"
            )
            log.debug("decode attempt %d failed verification (%s)", attempt, last)
        except (NonRealRoots, UnstableDelta, NoConvergence) as exc:
            last = exc
            log.debug("decode attempt %d failed: %s", attempt, exc)
    raise DecodeVerificationFailed(
        f"no separator produced a verified decode after {MAX_RETRIES + 1} attempts: {last}"
    )


def decode_variable(latent: PolyLatent, seed: int = 0, box=None) -> Multiset:
    """Invert the shifted encoder: unshift, decode, strip sentinel copies.

    ``box`` falls back to the bounds recorded at encode time when available;
    without either, only the upper bound implied by the sentinel is checked.
    Raises :class:`SentinelLeak` when stripped output still holds vectors
    outside the box.
    """
    if not latent.shifted or latent.sentinel is None:
        raise ValueError("decode_variable needs a shifted latent with sentinel metadata")
    x0 = np.asarray(latent.sentinel, dtype=float)
    idx = exponent_index(latent.n_max, latent.dim)
    plain = PolyLatent(
        values=latent.values + latent.n_max * phi_poly(x0, idx),
        n_max=latent.n_max,
        dim=latent.dim,
    )
    padded = decode_poly(plain, seed=seed)
    scale = 1.0 + float(np.linalg.norm(x0))
    keep = []
    for element in padded:
        if np.linalg.norm(np.asarray(element) - x0) > IMAG_DISCARD_REL * scale:
            keep.append(element)
    if not keep:
        raise EmptyInput("decode removed every element as sentinel padding")
    box = box if box is not None else latent.box
    hi = float(x0[0]) - 1.0
    slack = 1e-6 * (1.0 + abs(hi))
    for element in keep:
        arr = np.asarray(element)
        outside_hi = bool(np.any(arr > hi + slack))
        outside_lo = box is not None and bool(np.any(arr < float(box[0]) - slack))
        if outside_hi or outside_lo:
            raise SentinelLeak(f"decoded element {element} lies outside the box")
    return canonicalize(keep, capacity=latent.n_max)
