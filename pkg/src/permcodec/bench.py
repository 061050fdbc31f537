"""Round-trip benchmark over a seeded corpus, comparing kernel backends.

Generates random multisets, runs encode -> decode for both codecs, and
reports wall time plus round-trip error percentiles per backend. Errors are
deterministic given the seed; timings obviously are not.
"""

from __future__ import annotations

import time

import numpy as np

from . import kernels
from .ident_codec import decode_ident, encode_ident
from .multiset import Multiset, canonicalize, matching_distance
from .poly_decoder import decode_poly
from .poly_encoder import encode_poly


def _corpus(seed: int, count: int) -> list:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        d = int(rng.integers(1, 4))
        n = int(rng.integers(1, 7))
        elems = rng.integers(0, 33, size=(n, d)) / 16.0  # rational grid in [0, 2]
        if rng.random() < 0.2 and n >= 2:
            elems[: int(rng.integers(1, n))] = elems[0]
        x = canonicalize([tuple(row) for row in elems], capacity=n)
        sep = _separation(x)
        if sep is not None and sep < 1e-3:
            continue
        out.append(x)
    return out


def _separation(x: Multiset):
    arr = x.as_array()
    dists = [
        float(np.linalg.norm(arr[i] - arr[j]))
        for i in range(len(arr))
        for j in range(i + 1, len(arr))
        if not np.array_equal(arr[i], arr[j])
    ]
    return min(dists) if dists else None


def _percentiles(errors) -> dict:
    e = np.array(sorted(errors)) if errors else np.array([0.0])
    return {
        "p50": float(np.percentile(e, 50)),
        "p90": float(np.percentile(e, 90)),
        "max": float(e.max()),
    }


def run_backend(corpus, seed: int) -> dict:
    """Round-trip the corpus on the active backend; returns stats."""
    stats = {}
    t0 = time.perf_counter()
    poly_err = []
    for i, x in enumerate(corpus):
        decoded = decode_poly(encode_poly(x, x.size), seed=seed + i)
        poly_err.append(matching_distance(x, decoded))
    stats["poly"] = {"seconds": time.perf_counter() - t0, **_percentiles(poly_err)}
    t0 = time.perf_counter()
    ident_err = []
    for x in corpus:
        decoded = decode_ident(encode_ident(x, x.size))
        ident_err.append(matching_distance(x, decoded))
    stats["ident"] = {"seconds": time.perf_counter() - t0, **_percentiles(ident_err)}
    return stats


def run(seed: int = 0, count: int = 50, out=print) -> dict:
    """Benchmark every available backend on one shared corpus."""
    corpus = _corpus(seed, count)
    out(f"corpus: {count} multisets (seed {seed}), D in 1..3, N in 1..6")
    results = {}
    previous = kernels.backend_name()
    try:
        for name in kernels.available_backends():
            kernels.use(name)
            stats = run_backend(corpus, seed)
            results[name] = stats
            for codec, s in stats.items():
                out(
                    f"backend={name} codec={codec} time={s['seconds']:.3f}s "
                    f"err p50={s['p50']:.3e} p90={s['p90']:.3e} max={s['max']:.3e}"
                )
    finally:
        kernels.use(previous)
    if len(results) == 2:
        for codec in ("poly", "ident"):
            speedup = results["py"][codec]["seconds"] / max(results["c"][codec]["seconds"], 1e-9)
            out(f"speedup {codec}: compiled is {speedup:.1f}x the pure backend")
    return results
