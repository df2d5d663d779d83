"""Compiled array engines and numeric helpers.

Everything here has a streaming pure-python twin in the public modules; the
engines exist to make full enumerations of millions of trees affordable.
With numba unavailable or ICT_NO_NUMBA set, be_stream/wge_stream report
unavailability (return None) and callers fall back to the streaming twins.
"""

from ._backend import USING_NUMBA, compiled, raw
from .be import be_stream, packable
from .metrics import count_inversions
from .wge import wge_stream

__all__ = [
    "USING_NUMBA",
    "be_stream",
    "compiled",
    "count_inversions",
    "packable",
    "raw",
    "wge_stream",
]
