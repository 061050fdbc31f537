import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def random_multiset(rng, dim, size, dup_fraction=0.0, low=-1.0, high=1.0, min_sep=1e-3):
    """Random element list with optional planted duplicates and a separation
    floor between distinct elements. Returns a list of coordinate tuples."""
    while True:
        elems = rng.uniform(low, high, size=(size, dim))
        if dup_fraction and size >= 2 and rng.random() < dup_fraction:
            copies = int(rng.integers(1, size))
            elems[:copies] = elems[0]
        distinct = np.unique(elems, axis=0)
        ok = True
        for i in range(len(distinct)):
            for j in range(i + 1, len(distinct)):
                if np.linalg.norm(distinct[i] - distinct[j]) < min_sep:
                    ok = False
        if ok:
            return [tuple(row) for row in elems]


def rational_multiset(rng, dim, size, dup_fraction=0.0, denom=16, top=32):
    """Random grid-rational element list in [0, top/denom]^D."""
    while True:
        elems = rng.integers(0, top + 1, size=(size, dim)) / float(denom)
        if dup_fraction and size >= 2 and rng.random() < dup_fraction:
            copies = int(rng.integers(1, size))
            elems[:copies] = elems[0]
        return [tuple(row) for row in elems]


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
