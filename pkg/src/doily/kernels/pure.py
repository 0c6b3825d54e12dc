"""Vectorized numpy kernel, the fallback when the extension is absent.

Single-threaded by design: the batch axis does the work that threads do in
the compiled kernel.  Ovoids are generated by a three-deep loop over the
smallest points with the fourth point vectorized; roots and completions
are then processed in wide column batches.
"""

import time

import numpy as np

from .. import geometry
from . import RunResult, geometry_tables

MAX_N = 6  # the commutation matrix is (4**n)**2 bools

_LINE_PTS, _COMPLETION, _OVOID_PTS, _GRID_MASKS, _COVER_MASKS, _TRIAD = geometry_tables()

# (i, j, anticommute?) for all abstract point pairs
_PAIR_WANT = [
    (i, j, frozenset((i, j)) not in _collinear)
    for _collinear in [
        {frozenset(p) for t in geometry.LINES for p in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))}
    ]
    for i in range(1, 16)
    for j in range(i + 1, 16)
]


def _low_mask(n):
    return ((1 << (2 * n)) - 1) // 3


def _check_n(n):
    if n < 2:
        raise ValueError("N >= 2 required")
    if n > MAX_N:
        raise ValueError("pure kernel supports N <= %d" % MAX_N)


def _anti_matrix(n):
    v = (1 << (2 * n)) - 1
    codes = np.arange(v + 1, dtype=np.uint32)
    m = np.uint32(_low_mask(n))
    ax, az = (codes >> 1) & m, codes & m
    cross = (ax[:, None] & az[None, :]) ^ (az[:, None] & ax[None, :])
    return (np.bitwise_count(cross) & 1).astype(bool)


def _phase(a, b, m):
    ax, az = (a >> 1) & m, a & m
    bx, bz = (b >> 1) & m, b & m
    plus = (~ax & az & bx & bz) | (ax & az & bx & ~bz) | (ax & ~az & ~bx & bz)
    minus = (ax & az & ~bx & bz) | (ax & ~az & bx & bz) | (~ax & az & bx & ~bz)
    return (np.bitwise_count(plus & m) + 3 * np.bitwise_count(minus & m)) & 3


def _iter_ovoid_batches(n, anti, batch=8192):
    """Yield (B, 5) uint32 arrays of sorted ovoids, ascending overall."""
    v = anti.shape[0] - 1
    buf = []
    buffered = 0
    for o1 in range(1, v + 1):
        row1 = anti[o1]
        for o2 in np.nonzero(row1[o1 + 1 :])[0] + o1 + 1:
            m2 = row1 & anti[o2]
            for o3 in np.nonzero(m2[o2 + 1 :])[0] + o2 + 1:
                m3 = m2 & anti[o3]
                c4 = (np.nonzero(m3[o3 + 1 :])[0] + o3 + 1).astype(np.uint32)
                if not c4.size:
                    continue
                o5 = np.uint32(o1 ^ o2 ^ o3) ^ c4
                sel = o5 > c4
                if not sel.any():
                    continue
                c4, o5 = c4[sel], o5[sel]
                cols = np.empty((c4.size, 5), dtype=np.uint32)
                cols[:, 0] = o1
                cols[:, 1] = o2
                cols[:, 2] = o3
                cols[:, 3] = c4
                cols[:, 4] = o5
                buf.append(cols)
                buffered += c4.size
                if buffered >= batch:
                    yield np.concatenate(buf)
                    buf, buffered = [], 0
    if buf:
        yield np.concatenate(buf)


def count_ovoids(n, threads=1, limit=None, emit=None):
    _check_n(n)
    t0 = time.monotonic()
    anti = _anti_matrix(n)
    total = 0
    for ovs in _iter_ovoid_batches(n, anti):
        if limit is not None and total + len(ovs) > limit:
            ovs = ovs[: limit - total]
        total += len(ovs)
        if emit is not None:
            for row in ovs:
                emit(tuple(int(x) for x in row))
        if limit is not None and total >= limit:
            break
    return RunResult(total=total, per_worker=[total], elapsed=time.monotonic() - t0)


def _find_roots(ovs, anti):
    cand = (
        ~anti[ovs[:, 0]]
        & ~anti[ovs[:, 1]]
        & ~anti[ovs[:, 2]]
        & anti[ovs[:, 3]]
        & anti[ovs[:, 4]]
    )
    cand[:, 0] = False
    bi, centers = np.nonzero(cand)
    return bi, centers.astype(np.uint32)


def _complete(ovs, centers):
    """(16, R) labeling array; row p is the image of abstract point p."""
    f = np.zeros((16, len(centers)), dtype=np.uint32)
    for k, p in enumerate(geometry.OVOID_REF):
        f[p] = ovs[:, k]
    f[geometry.CENTER_REF] = centers
    for p, q, r in geometry.COMPLETION:
        f[r] = f[p] ^ f[q]
    return f


def _canonical_mask(f, n):
    imgs = np.sort(f[_OVOID_PTS], axis=1).astype(np.uint64)
    packed = np.zeros((6, imgs.shape[2]), dtype=np.uint64)
    for k in range(5):
        packed = (packed << np.uint64(2 * n)) | imgs[:, k, :]
    return (packed[1:] > packed[0]).all(axis=0)


def _classify_batch(f, n, anti, counts, check):
    """Accumulate packed-key counts for a completed batch; returns the
    number of per-doily violations detected (0 on healthy geometry)."""
    m = np.uint32(_low_mask(n))
    r = f.shape[1]
    viol = np.zeros(r, dtype=bool)

    iw = n - np.bitwise_count((f[1:] | (f[1:] >> 1)) & m)
    key = np.zeros(r, dtype=np.uint64)
    for w in range(n):
        t = n - 1 - w
        key |= (iw == w).sum(axis=0).astype(np.uint64) << np.uint64(5 + 4 * t)

    neg = np.zeros(r, dtype=np.uint16)
    for li, (pa, pb, pc) in enumerate(geometry.LINES):
        a, b, c = f[pa], f[pb], f[pc]
        k = (_phase(a, b, m) + _phase(a ^ b, c, m)) & 3
        viol |= (k & 1) == 1
        neg |= (k == 2).astype(np.uint16) << np.uint16(li)

    negcnt = np.bitwise_count(neg)
    cover = np.zeros(r, dtype=np.uint16)
    for li in range(15):
        cover |= np.where((neg >> li) & 1 == 1, _COVER_MASKS[li], 0).astype(np.uint16)
    covcnt = np.bitwise_count(cover)

    cfg = np.full(r, -1, dtype=np.int8)
    for cnt, tag_idx in ((3, 0), (4, 1), (5, 2), (6, 3), (9, 8), (10, 9), (11, 10), (12, 11)):
        cfg[negcnt == cnt] = tag_idx
    for cnt, cov, tag_idx in ((7, 15, 4), (7, 13, 5), (8, 15, 6), (8, 13, 7)):
        cfg[(negcnt == cnt) & (covcnt == cov)] = tag_idx
    viol |= cfg < 0

    ta, tb, tc = f[_TRIAD[0]], f[_TRIAD[1]], f[_TRIAD[2]]
    k = (_phase(ta, tb, m) + _phase(ta ^ tb, tc, m)) & 3
    viol |= (k & 1) == 0
    linear = (ta ^ tb ^ tc) == 0

    if check:
        # commutation pattern must match the abstract incidence exactly
        for i, j, want_anti in _PAIR_WANT:
            viol |= anti[f[i], f[j]] != want_anti
        srt = np.sort(f[1:], axis=0)
        viol |= (srt[1:] == srt[:-1]).any(axis=0)
        viol |= srt[0] == 0
        for o in _OVOID_PTS:
            x = np.zeros(r, dtype=np.uint32)
            for p in o:
                x ^= f[p]
            viol |= x != 0
        for g in range(10):
            viol |= np.bitwise_count(neg & _GRID_MASKS[g]) & 1 == 0
        viol |= linear & (negcnt % 2 == 0)

    key |= np.where(linear, 16, 0).astype(np.uint64) | np.where(cfg < 0, 0, cfg).astype(np.uint64)
    good = ~viol
    uk, uc = np.unique(key[good], return_counts=True)
    for k_, c_ in zip(uk, uc):
        counts[int(k_)] = counts.get(int(k_), 0) + int(c_)
    return int(viol.sum())


def run(n, threads=1, limit=None, classify=False, check=False, emit=None):
    _check_n(n)
    t0 = time.monotonic()
    anti = _anti_matrix(n)
    counts = {}
    total = 0
    violations = 0
    for ovs in _iter_ovoid_batches(n, anti):
        bi, centers = _find_roots(ovs, anti)
        f = _complete(ovs[bi], centers)
        f = f[:, _canonical_mask(f, n)]
        if limit is not None and total + f.shape[1] > limit:
            f = f[:, : limit - total]
        total += f.shape[1]
        if classify or check:
            violations += _classify_batch(f, n, anti, counts, check)
        if emit is not None:
            for col in f[1:].T:
                emit(tuple(int(x) for x in col))
        if limit is not None and total >= limit:
            break
    return RunResult(
        total=total,
        per_worker=[total],
        counts=counts if classify else None,
        violations=violations,
        elapsed=time.monotonic() - t0,
    )
