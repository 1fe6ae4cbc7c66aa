"""Thin wrapper around numba so kernels stay importable without it."""

import os

try:
    from numba import njit as _njit
except ImportError:  # pragma: no cover
    _njit = None

_DISABLED = os.environ.get("RSPLANNER_NO_JIT", "") not in ("", "0")


def njit(fn):
    if _njit is None or _DISABLED:
        return fn
    return _njit(cache=True, fastmath=False, error_model="numpy")(fn)
