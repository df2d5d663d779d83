"""Inversion counting over weight arrays."""

from __future__ import annotations

import numpy as np

from ._backend import compiled


@compiled
def _merge_inversions(a):
    n = a.size
    src = a.copy()
    buf = np.empty(n, np.float64)
    inv = np.int64(0)
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[j] < src[i]:  # strict: equal values are in order
                    inv += mid - i
                    buf[k] = src[j]
                    j += 1
                else:
                    buf[k] = src[i]
                    i += 1
                k += 1
            while i < mid:
                buf[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                buf[k] = src[j]
                j += 1
                k += 1
            lo = hi
        src, buf = buf, src
        width *= 2
    return inv


def count_inversions(ws) -> int:
    """Pairs i < j with ws[i] > ws[j], by bottom-up mergesort."""
    arr = np.ascontiguousarray(np.asarray(ws, dtype=np.float64))
    if arr.size < 2:
        return 0
    return int(_merge_inversions(arr))
