"""Compilation backend: numba when importable and not disabled, otherwise
the same functions run interpreted.

Set ICT_NO_NUMBA=1 (checked at import) to force the interpreted path; the
compiled array engines then report themselves unavailable and the streaming
engines take over, but every kernel stays callable for parity testing.
"""

from __future__ import annotations

import os

USING_NUMBA = False
_njit = None
if not os.environ.get("ICT_NO_NUMBA"):
    try:
        from numba import njit as _njit  # type: ignore
        USING_NUMBA = True
    except ImportError:
        _njit = None


def compiled(fn):
    if USING_NUMBA:
        return _njit(cache=True)(fn)
    return fn


def raw(fn):
    """The plain-python function behind a compiled one (itself when the
    interpreted backend is active)."""
    return getattr(fn, "py_func", fn)
