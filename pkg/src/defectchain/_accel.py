"""Switch between numba-compiled kernels and the pure numpy fallbacks.

Set ``DEFECTCHAIN_DISABLE_NUMBA=1`` before import to force the numpy path.
"""
import os

_FLAG = os.environ.get("DEFECTCHAIN_DISABLE_NUMBA", "").strip().lower()

try:
    from numba import njit as _njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    _njit = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def jit(func):
    """Compile ``func`` in nopython mode; return it untouched if numba is unavailable."""
    if _njit is None:  # pragma: no cover
        return func
    return _njit(cache=True)(func)


def select(compiled, fallback):
    """Pick the kernel implementation for the active backend."""
    return compiled if USE_NUMBA else fallback
