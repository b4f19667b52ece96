"""Numba acceleration switch for the hot kernels.

Every function in :mod:`linpacket._kernels` is wrapped with
:func:`maybe_njit`.  When numba is importable and the environment variable
``LINPACKET_DISABLE_NUMBA`` is unset (or falsy), the kernels are JIT-compiled
with ``cache=True``.  Otherwise the same functions run as plain
Python/numpy -- slower, but numerically equivalent.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""
from __future__ import annotations

import os

__all__ = ["NUMBA_ENABLED", "maybe_njit"]


def _detect() -> bool:
    flag = os.environ.get("LINPACKET_DISABLE_NUMBA", "").strip().lower()
    if flag in {"1", "true", "yes", "on"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _detect()

if NUMBA_ENABLED:
    from numba import njit as _njit

    def maybe_njit(func=None, **kwargs):
        kwargs.setdefault("cache", True)
        if func is not None:
            return _njit(**kwargs)(func)
        return _njit(**kwargs)

else:

    def maybe_njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrap(f):
            return f

        return wrap
