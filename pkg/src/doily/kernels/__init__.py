"""Batch enumeration kernels and the import-time selection between them.

Two interchangeable implementations exist: a Cython/OpenMP extension
(kernels._fast) and a vectorized numpy fallback (kernels.pure).  Both
walk ovoids, complete roots, keep canonical doilies and accumulate
per-type counts keyed by a packed integer; this module owns the packing,
the marshalled geometry tables, and the selection logic.

Set DOILY_FORCE_PURE=1 to skip the compiled kernel even when present.
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .. import geometry

CONFIG_INDEX = {tag: i for i, tag in enumerate(geometry.CONFIG_TAGS)}


@dataclass
class RunResult:
    total: int
    per_worker: list
    counts: dict | None = None
    violations: int = 0
    elapsed: float = 0.0
    extras: dict = field(default_factory=dict)


def pack_key(signature, character, tag):
    key = CONFIG_INDEX[tag] | (16 if character == "l" else 0)
    for t, v in enumerate(signature):
        key |= v << (5 + 4 * t)
    return key


def unpack_key(key, n):
    tag = geometry.CONFIG_TAGS[key & 15]
    character = "l" if key & 16 else "q"
    sig = tuple((key >> (5 + 4 * t)) & 15 for t in range(n))
    return sig, character, tag


def decode_counts(raw, n):
    """{packed key: count} -> {(signature, character, tag): count}."""
    return {unpack_key(int(k), n): int(v) for k, v in raw.items()}


def geometry_tables():
    """Constant structure marshalled as small numpy arrays for the kernels."""
    line_pts = np.array(geometry.LINES, dtype=np.uint8)
    completion = np.array(geometry.COMPLETION, dtype=np.uint8)
    ovoid_pts = np.array(geometry.OVOIDS, dtype=np.uint8)
    grid_masks = np.zeros(10, dtype=np.uint16)
    for g, lines in enumerate(geometry.GRID_LINES):
        for k in lines:
            grid_masks[g] |= 1 << k
    cover_masks = np.zeros(15, dtype=np.uint16)
    for k, t in enumerate(geometry.LINES):
        for p in t:
            cover_masks[k] |= 1 << (p - 1)
    triad = np.array(geometry.TRICENTRIC_TRIAD, dtype=np.uint8)
    return line_pts, completion, ovoid_pts, grid_masks, cover_masks, triad


def config_index_of(negcount, coverage):
    """Index into CONFIG_TAGS, or -1 when no pattern matches."""
    if negcount in (7, 8):
        tag = geometry.COVERAGE_SPLIT.get((negcount, coverage))
        return -1 if tag is None else CONFIG_INDEX[tag]
    if 3 <= negcount <= 12:
        return CONFIG_INDEX[str(negcount)]
    return -1


def _pick():
    if os.environ.get("DOILY_FORCE_PURE"):
        from . import pure

        return pure, "pure"
    try:
        from . import _fast

        return _fast, "fast"
    except ImportError:
        from . import pure

        return pure, "pure"


_kernel, KERNEL_NAME = _pick()


def get_kernel(name=None):
    """The active kernel module, or a specific one by name."""
    if name is None:
        return _kernel
    if name == "pure":
        from . import pure

        return pure
    if name == "fast":
        from . import _fast

        return _fast
    raise ValueError("unknown kernel %r" % name)


def count_ovoids(n, threads=1, limit=None, emit=None, kernel=None):
    return (kernel or _kernel).count_ovoids(n, threads=threads, limit=limit, emit=emit)


def run(n, threads=1, limit=None, classify=False, check=False, emit=None, kernel=None):
    """Enumerate doilies; returns a RunResult with decoded counts."""
    res = (kernel or _kernel).run(
        n, threads=threads, limit=limit, classify=classify, check=check, emit=emit
    )
    if res.counts is not None:
        res.counts = decode_counts(res.counts, n)
    return res
