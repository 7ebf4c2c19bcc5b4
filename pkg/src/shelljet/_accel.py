"""Backend switch for the compiled kernels.

Set ``SHELLJET_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The choice is read once at import time.
"""

import os

DISABLE_NUMBA = os.environ.get("SHELLJET_DISABLE_NUMBA", "0").lower() in ("1", "true", "yes")

try:
    if DISABLE_NUMBA:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag
    _njit = None
    HAVE_NUMBA = False


def jit(func=None, **kwargs):
    """``numba.njit`` when enabled, identity otherwise."""

    def wrap(f):
        if HAVE_NUMBA:
            return _njit(cache=True, **kwargs)(f)
        return f

    if func is not None:
        return wrap(func)
    return wrap


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
