"""Kernel backend selection.

The compiled Cython extension ``_ckernels`` is preferred when importable;
``_pykernels`` is the pure-Python fallback. The choice happens once at import
time and may be forced with ``PERMCODEC_KERNELS=c`` or ``=py``. ``use()``
exists so the benchmark can time both backends in one process; it is not
meant to be called concurrently.
"""

import logging
import os

from . import _pykernels

log = logging.getLogger("permcodec")

_BACKENDS = {"py": _pykernels}

try:
    from . import _ckernels

    _BACKENDS["c"] = _ckernels
except ImportError:
    _ckernels = None

_forced = os.environ.get("PERMCODEC_KERNELS", "").strip().lower()
if _forced and _forced not in _BACKENDS:
    log.warning("PERMCODEC_KERNELS=%r not available, ignoring", _forced)
    _forced = ""

_active = _forced or ("c" if "c" in _BACKENDS else "py")
impl = _BACKENDS[_active]
log.debug("kernel backend: %s", _active)


def backend_name() -> str:
    """Name of the active backend: 'c' or 'py'."""
    return _active


def available_backends() -> list:
    return sorted(_BACKENDS)


def get(name: str):
    """Return a backend module by name without switching the default."""
    return _BACKENDS[name]


def use(name: str) -> str:
    """Switch the active backend; returns the previous name."""
    global impl, _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {available_backends()}")
    prev = _active
    _active = name
    impl = _BACKENDS[name]
    return prev
