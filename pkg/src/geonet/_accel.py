"""Backend selection for the numeric kernels.

Set ``GEONET_BACKEND=numpy`` to force the pure-numpy path. The numba path is
used when numba imports cleanly and the variable is unset or ``numba``.
"""
from __future__ import annotations

import functools
import os

try:
    from numba import njit as _njit

    NUMBA_OK = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_OK = False
    _njit = None

_requested = os.environ.get("GEONET_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"GEONET_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

DEFAULT_BACKEND = "numba" if (NUMBA_OK and _requested == "numba") else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` with caching on, or a pass-through when numba is absent."""
    kwargs.setdefault("cache", True)
    if NUMBA_OK:
        return _njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def wrap(f):
        @functools.wraps(f)
        def inner(*a, **kw):
            return f(*a, **kw)

        return inner

    return wrap


def resolve(backend: str | None) -> str:
    if backend is None:
        return DEFAULT_BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not NUMBA_OK:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend
