"""Contextuality degree of doily-shaped observable configurations.

A sign assignment to the 15 points is scored by how many of the 15 line
signs it reproduces; the degree is the number of lines no assignment can
satisfy.  Equivalently: the minimum Hamming distance between the
valuation vector and the GF(2) row space of the incidence matrix.
"""

import numpy as np

from . import geometry
from .classify import valuation_bits

_SAT_TABLE = None


def incidence_matrix():
    """(15, 15) GF(2) incidence matrix, lines x points."""
    a = np.zeros((15, 15), dtype=np.uint8)
    for li, line in enumerate(geometry.LINES):
        for p in line:
            a[li, p - 1] = 1
    return a


def _line_masks():
    return [sum(1 << (p - 1) for p in line) for line in geometry.LINES]


def _table():
    # A.x for every x in GF(2)^15, packed as line-index bitmasks
    global _SAT_TABLE
    if _SAT_TABLE is None:
        x = np.arange(1 << 15, dtype=np.uint16)
        t = np.zeros(1 << 15, dtype=np.uint16)
        for li, mask in enumerate(_line_masks()):
            # bitwise_count yields uint8; widen before shifting past bit 7
            par = np.bitwise_count(x & np.uint16(mask)).astype(np.uint16) & np.uint16(1)
            t |= par << np.uint16(li)
        _SAT_TABLE = t
    return _SAT_TABLE


def degree(valuation):
    """Minimum number of unsatisfiable lines for a 15-bit valuation mask."""
    if not 0 <= valuation < 1 << 15:
        raise ValueError("valuation must be a 15-bit mask")
    t = _table()
    return int(np.bitwise_count(t ^ np.uint16(valuation)).min())


def doily_degree(doily):
    return degree(valuation_bits(doily))


def reference_valuations():
    """One representative valuation mask per negative-line configuration."""
    return {
        tag: sum(1 << li for li in geometry.PATTERNS[tag])
        for tag in geometry.CONFIG_TAGS
    }
