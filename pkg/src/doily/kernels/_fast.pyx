# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernel.

Bitset depth-first search over the ambient point set with OpenMP work
sharing on the outermost loop.  Per-thread tallies go into C++ hash maps
keyed by the packed classification key and are merged under the GIL at
the end.  Runs with ``emit`` or ``limit`` fall back to a sequential scan
so output order stays deterministic.
"""

import time

import numpy as np

from .. import geometry
from . import RunResult, geometry_tables

from cython.operator cimport dereference as deref, preincrement as inc
from cython.parallel cimport prange, parallel
cimport openmp
from libc.stdint cimport uint8_t, uint16_t, uint32_t, uint64_t, int64_t
from libc.stdlib cimport malloc, realloc, free
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

ctypedef unordered_map[uint64_t, int64_t] CountMap

cdef extern from *:
    """
    #include <unordered_map>
    #include <cstdint>
    static inline void bump(std::unordered_map<uint64_t, int64_t>& m,
                            uint64_t k, int64_t v) { m[k] += v; }
    static inline int popcll(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int ctzll(unsigned long long x) { return __builtin_ctzll(x); }
    """
    void bump(CountMap& m, uint64_t k, int64_t v) nogil
    int popcll(unsigned long long x) nogil
    int ctzll(unsigned long long x) nogil

MAX_N = 6  # five codes of 2n bits each must pack into one 64-bit word

# ---------------------------------------------------------------- geometry
# Static copies of the abstract doily tables, filled once at import.

cdef uint8_t LINE_A[15]
cdef uint8_t LINE_B[15]
cdef uint8_t LINE_C[15]
cdef uint8_t COMP_P[9]
cdef uint8_t COMP_Q[9]
cdef uint8_t COMP_R[9]
cdef uint8_t OV_PTS[6][5]
cdef uint16_t GRID_MASK[10]
cdef uint16_t COVER_MASK[15]
cdef uint8_t TRIAD[3]
cdef uint8_t REF_PT[5]
cdef int CENTER_PT
cdef uint8_t PAIR_I[105]
cdef uint8_t PAIR_J[105]
cdef uint8_t PAIR_ANTI[105]


def _load_tables():
    cdef int i, j, k
    lp, comp, ov, gm, cm, triad = geometry_tables()
    for i in range(15):
        LINE_A[i] = lp[i, 0]
        LINE_B[i] = lp[i, 1]
        LINE_C[i] = lp[i, 2]
        COVER_MASK[i] = cm[i]
    for i in range(9):
        COMP_P[i] = comp[i, 0]
        COMP_Q[i] = comp[i, 1]
        COMP_R[i] = comp[i, 2]
    for i in range(6):
        for k in range(5):
            OV_PTS[i][k] = ov[i, k]
    for i in range(10):
        GRID_MASK[i] = gm[i]
    for i in range(3):
        TRIAD[i] = triad[i]
    for k in range(5):
        REF_PT[k] = geometry.OVOID_REF[k]
    global CENTER_PT
    CENTER_PT = geometry.CENTER_REF
    collinear = {
        frozenset(p)
        for t in geometry.LINES
        for p in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))
    }
    k = 0
    for i in range(1, 16):
        for j in range(i + 1, 16):
            PAIR_I[k], PAIR_J[k] = i, j
            PAIR_ANTI[k] = frozenset((i, j)) not in collinear
            k += 1


_load_tables()


# ---------------------------------------------------------------- helpers

cdef inline int next_bit(const uint64_t* bs, int w, int start) nogil:
    """Smallest set bit index >= start, or -1."""
    cdef int wi = start >> 6
    cdef uint64_t word
    if wi >= w:
        return -1
    word = bs[wi] & ((~<uint64_t>0) << (start & 63))
    while True:
        if word:
            return (wi << 6) + ctzll(word)
        wi += 1
        if wi >= w:
            return -1
        word = bs[wi]


cdef inline int phase2(uint64_t a, uint64_t b, uint64_t m) nogil:
    cdef uint64_t ax = (a >> 1) & m
    cdef uint64_t az = a & m
    cdef uint64_t bx = (b >> 1) & m
    cdef uint64_t bz = b & m
    cdef uint64_t plus = (~ax & az & bx & bz) | (ax & az & bx & ~bz) | (ax & ~az & ~bx & bz)
    cdef uint64_t minus = (ax & az & ~bx & bz) | (ax & ~az & bx & bz) | (~ax & az & bx & ~bz)
    return (popcll(plus & m) + 3 * popcll(minus & m)) & 3


cdef inline bint is_canonical(const uint32_t* f, int shift) nogil:
    """True iff the generating ovoid (abstract ovoid 0, whose images are
    already sorted ascending) is the lexicographic minimum of the six."""
    cdef uint64_t gen = 0, other
    cdef uint32_t tmp[5]
    cdef uint32_t x
    cdef int j, k, i
    for k in range(5):
        gen = (gen << shift) | f[OV_PTS[0][k]]
    for j in range(1, 6):
        for k in range(5):
            tmp[k] = f[OV_PTS[j][k]]
        for k in range(1, 5):
            x = tmp[k]
            i = k - 1
            while i >= 0 and tmp[i] > x:
                tmp[i + 1] = tmp[i]
                i -= 1
            tmp[i + 1] = x
        other = 0
        for k in range(5):
            other = (other << shift) | tmp[k]
        if other <= gen:
            return False
    return True


cdef inline int classify_one(const uint32_t* f, int n, uint64_t m, const uint8_t* iw,
                             bint do_check, const uint64_t* anti, int w,
                             CountMap* cmap) nogil:
    """Classify one completed doily; bump cmap and return 0, or return 1
    on any violated invariant (violators are never counted)."""
    cdef uint64_t key = 0
    cdef uint32_t a, b, c
    cdef uint16_t neg = 0
    cdef int li, k, i, j, cfg, negcnt
    cdef int cover16 = 0
    cdef bint bad = 0, linear
    cdef uint32_t x

    for k in range(15):
        key += (<uint64_t>1) << (5 + 4 * (n - 1 - iw[f[k + 1]]))

    for li in range(15):
        a = f[LINE_A[li]]
        b = f[LINE_B[li]]
        c = f[LINE_C[li]]
        k = (phase2(a, b, m) + phase2(a ^ b, c, m)) & 3
        if k & 1:
            bad = 1
        elif k == 2:
            neg |= (<uint16_t>1) << li

    negcnt = popcll(neg)
    for li in range(15):
        if (neg >> li) & 1:
            cover16 |= COVER_MASK[li]
    cfg = -1
    if 3 <= negcnt <= 6:
        cfg = negcnt - 3
    elif 9 <= negcnt <= 12:
        cfg = negcnt - 1
    elif negcnt == 7:
        cfg = 4 if popcll(cover16) == 15 else (5 if popcll(cover16) == 13 else -1)
    elif negcnt == 8:
        cfg = 6 if popcll(cover16) == 15 else (7 if popcll(cover16) == 13 else -1)
    if cfg < 0:
        bad = 1

    a = f[TRIAD[0]]
    b = f[TRIAD[1]]
    c = f[TRIAD[2]]
    k = (phase2(a, b, m) + phase2(a ^ b, c, m)) & 3
    if not (k & 1):
        bad = 1
    linear = (a ^ b ^ c) == 0

    if do_check:
        for k in range(105):
            i = f[PAIR_I[k]]
            j = f[PAIR_J[k]]
            if i == j:
                bad = 1
            elif ((anti[(<size_t>i) * w + (j >> 6)] >> (j & 63)) & 1) != PAIR_ANTI[k]:
                bad = 1
        for k in range(15):
            if f[k + 1] == 0:
                bad = 1
        for j in range(6):
            x = 0
            for k in range(5):
                x ^= f[OV_PTS[j][k]]
            if x:
                bad = 1
        for j in range(10):
            if (popcll(neg & GRID_MASK[j]) & 1) == 0:
                bad = 1
        if linear and (negcnt & 1) == 0:
            bad = 1

    if bad:
        return 1
    if cmap != NULL:
        key |= (<uint64_t>16 if linear else <uint64_t>0) | <uint64_t>cfg
        bump(deref(cmap), key, 1)
    return 0


cdef int64_t scan_o1(int o1, int n, int v, int w, int shift, uint64_t lowmask,
                     const uint64_t* anti, const uint64_t* universe, const uint8_t* iw,
                     uint64_t* buf2, uint64_t* buf3, uint64_t* cbuf,
                     bint do_classify, bint do_check, CountMap* cmap,
                     int64_t* viol, int64_t cap,
                     uint32_t** ebuf_p, int64_t* eused, int64_t* ecap) nogil:
    """All canonical doilies whose generating ovoid has smallest point o1."""
    cdef const uint64_t* row1 = anti + (<size_t>o1) * w
    cdef const uint64_t* row2
    cdef const uint64_t* row3
    cdef const uint64_t* row4
    cdef const uint64_t* row5
    cdef int o2, o3, o4, o5, c, i, k, s
    cdef uint64_t x123
    cdef uint32_t f[16]
    cdef uint32_t* nb
    cdef int64_t found = 0
    f[0] = 0
    o2 = next_bit(row1, w, o1 + 1)
    while o2 != -1:
        row2 = anti + (<size_t>o2) * w
        for i in range(w):
            buf2[i] = row1[i] & row2[i]
        o3 = next_bit(buf2, w, o2 + 1)
        while o3 != -1:
            row3 = anti + (<size_t>o3) * w
            for i in range(w):
                buf3[i] = buf2[i] & row3[i]
            x123 = <uint64_t>(o1 ^ o2 ^ o3)
            o4 = next_bit(buf3, w, o3 + 1)
            while o4 != -1:
                o5 = <int>(x123 ^ <uint64_t>o4)
                if o5 > o4:
                    row4 = anti + (<size_t>o4) * w
                    row5 = anti + (<size_t>o5) * w
                    for i in range(w):
                        cbuf[i] = ~(row1[i] | row2[i] | row3[i]) & row4[i] & row5[i] & universe[i]
                    c = next_bit(cbuf, w, 0)
                    while c != -1:
                        f[REF_PT[0]] = o1
                        f[REF_PT[1]] = o2
                        f[REF_PT[2]] = o3
                        f[REF_PT[3]] = o4
                        f[REF_PT[4]] = o5
                        f[CENTER_PT] = c
                        for s in range(9):
                            f[COMP_R[s]] = f[COMP_P[s]] ^ f[COMP_Q[s]]
                        if is_canonical(f, shift):
                            found += 1
                            if do_classify or do_check:
                                viol[0] += classify_one(f, n, lowmask, iw, do_check,
                                                        anti, w, cmap if do_classify else NULL)
                            if ebuf_p != NULL:
                                if eused[0] + 15 > ecap[0]:
                                    ecap[0] = ecap[0] * 2 + 15
                                    nb = <uint32_t*>realloc(ebuf_p[0], ecap[0] * 4)
                                    if nb == NULL:
                                        with gil:
                                            raise MemoryError()
                                    ebuf_p[0] = nb
                                for k in range(15):
                                    ebuf_p[0][eused[0] + k] = f[k + 1]
                                eused[0] += 15
                            if cap >= 0 and found >= cap:
                                return found
                        c = next_bit(cbuf, w, c + 1)
                o4 = next_bit(buf3, w, o4 + 1)
            o3 = next_bit(buf2, w, o3 + 1)
        o2 = next_bit(row1, w, o2 + 1)
    return found


cdef int64_t scan_ovoids_o1(int o1, int v, int w, const uint64_t* anti,
                            uint64_t* buf2, uint64_t* buf3, int64_t cap,
                            uint32_t** ebuf_p, int64_t* eused, int64_t* ecap) nogil:
    """All ovoids (sorted 5-sets) whose smallest point is o1."""
    cdef const uint64_t* row1 = anti + (<size_t>o1) * w
    cdef int o2, o3, o4, o5, i
    cdef uint64_t x123
    cdef uint32_t* nb
    cdef int64_t found = 0
    o2 = next_bit(row1, w, o1 + 1)
    while o2 != -1:
        for i in range(w):
            buf2[i] = row1[i] & anti[(<size_t>o2) * w + i]
        o3 = next_bit(buf2, w, o2 + 1)
        while o3 != -1:
            for i in range(w):
                buf3[i] = buf2[i] & anti[(<size_t>o3) * w + i]
            x123 = <uint64_t>(o1 ^ o2 ^ o3)
            o4 = next_bit(buf3, w, o3 + 1)
            while o4 != -1:
                o5 = <int>(x123 ^ <uint64_t>o4)
                if o5 > o4:
                    found += 1
                    if ebuf_p != NULL:
                        if eused[0] + 5 > ecap[0]:
                            ecap[0] = ecap[0] * 2 + 5
                            nb = <uint32_t*>realloc(ebuf_p[0], ecap[0] * 4)
                            if nb == NULL:
                                with gil:
                                    raise MemoryError()
                            ebuf_p[0] = nb
                        ebuf_p[0][eused[0] + 0] = o1
                        ebuf_p[0][eused[0] + 1] = o2
                        ebuf_p[0][eused[0] + 2] = o3
                        ebuf_p[0][eused[0] + 3] = o4
                        ebuf_p[0][eused[0] + 4] = o5
                        eused[0] += 5
                    if cap >= 0 and found >= cap:
                        return found
                o4 = next_bit(buf3, w, o4 + 1)
            o3 = next_bit(buf2, w, o3 + 1)
        o2 = next_bit(row1, w, o2 + 1)
    return found


# ---------------------------------------------------------------- tables

def _check_n(n):
    if n < 2:
        raise ValueError("N >= 2 required")
    if n > MAX_N:
        raise ValueError("compiled kernel supports N <= %d" % MAX_N)


def _build_tables(int n):
    """(anti bitsets (v+1, w) uint64, universe (w,) uint64, iw (v+1,) uint8)"""
    cdef int v = (1 << (2 * n)) - 1
    cdef int w = (v + 64) >> 6
    codes = np.arange(v + 1, dtype=np.uint64)
    m = np.uint64(((1 << (2 * n)) - 1) // 3)
    ax, az = (codes >> np.uint64(1)) & m, codes & m
    cross = (ax[:, None] & az[None, :]) ^ (az[:, None] & ax[None, :])
    anti_bool = (np.bitwise_count(cross) & np.uint64(1)).astype(bool)
    pad = np.zeros((v + 1, w * 64), dtype=bool)
    pad[:, : v + 1] = anti_bool
    anti = np.ascontiguousarray(
        np.packbits(pad, axis=1, bitorder="little").view(np.uint64)
    )
    universe = np.zeros(w * 64, dtype=bool)
    universe[1 : v + 1] = True
    universe = np.packbits(universe, bitorder="little").view(np.uint64).copy()
    iw = (n - np.bitwise_count((codes | (codes >> np.uint64(1))) & m)).astype(np.uint8)
    return anti, universe, iw


# ---------------------------------------------------------------- entry points

def count_ovoids(n, threads=1, limit=None, emit=None):
    _check_n(n)
    t0 = time.monotonic()
    cdef int cn = n, v = (1 << (2 * cn)) - 1
    cdef int w = (v + 64) >> 6
    cdef int nthreads = max(1, int(threads))
    anti_np, universe_np, _ = _build_tables(cn)
    cdef uint64_t[:, ::1] anti_mv = anti_np
    cdef const uint64_t* anti = &anti_mv[0, 0]
    cdef uint64_t* buf
    cdef int o1, tid, r
    cdef int64_t cap = -1 if limit is None else max(0, int(limit))
    cdef uint32_t* ebuf = NULL
    cdef int64_t eused = 0, ecap = 0
    cdef int64_t[::1] tot = np.zeros(nthreads, dtype=np.int64)
    cdef int64_t total = 0

    if emit is None and limit is None:
        with nogil, parallel(num_threads=nthreads):
            buf = <uint64_t*>malloc(2 * w * 8)
            for o1 in prange(1, v + 1, schedule="dynamic"):
                tid = openmp.omp_get_thread_num()
                tot[tid] += scan_ovoids_o1(o1, v, w, anti, buf, buf + w, -1,
                                           NULL, &eused, &ecap)
            free(buf)
        return RunResult(total=int(np.sum(tot)), per_worker=[int(x) for x in tot],
                         elapsed=time.monotonic() - t0)

    cdef uint32_t** ebp = NULL
    buf = <uint64_t*>malloc(2 * w * 8)
    if emit is not None:
        ecap = 5 * 4096
        ebuf = <uint32_t*>malloc(ecap * 4)
        ebp = &ebuf
    try:
        for o1 in range(1, v + 1):
            with nogil:
                total += scan_ovoids_o1(o1, v, w, anti, buf, buf + w,
                                        -1 if cap < 0 else cap - total,
                                        ebp, &eused, &ecap)
            if emit is not None:
                for r in range(<int>(eused // 5)):
                    emit((ebuf[r * 5], ebuf[r * 5 + 1], ebuf[r * 5 + 2],
                          ebuf[r * 5 + 3], ebuf[r * 5 + 4]))
                eused = 0
            if cap >= 0 and total >= cap:
                break
    finally:
        free(buf)
        free(ebuf)
    return RunResult(total=int(total), per_worker=[int(total)],
                     elapsed=time.monotonic() - t0)


def run(n, threads=1, limit=None, classify=False, check=False, emit=None):
    _check_n(n)
    t0 = time.monotonic()
    cdef int cn = n, v = (1 << (2 * cn)) - 1
    cdef int w = (v + 64) >> 6
    cdef int shift = 2 * cn
    cdef uint64_t lowmask = ((<uint64_t>1 << (2 * cn)) - 1) // 3
    cdef int nthreads = max(1, int(threads))
    cdef bint do_classify = bool(classify), do_check = bool(check)
    anti_np, universe_np, iw_np = _build_tables(cn)
    cdef uint64_t[:, ::1] anti_mv = anti_np
    cdef uint64_t[::1] uni_mv = universe_np
    cdef uint8_t[::1] iw_mv = iw_np
    cdef const uint64_t* anti = &anti_mv[0, 0]
    cdef const uint64_t* universe = &uni_mv[0]
    cdef const uint8_t* iw = &iw_mv[0]
    cdef vector[CountMap*] maps
    cdef CountMap.iterator it
    cdef uint64_t* buf
    cdef int o1, tid, t, r, k
    cdef int64_t cap = -1 if limit is None else max(0, int(limit))
    cdef uint32_t* ebuf = NULL
    cdef uint32_t** ebp = NULL
    cdef int64_t eused = 0, ecap = 0
    cdef int64_t[::1] tot = np.zeros(nthreads, dtype=np.int64)
    cdef int64_t[::1] vio = np.zeros(nthreads, dtype=np.int64)
    cdef int64_t total = 0

    maps.resize(nthreads)
    for t in range(nthreads):
        maps[t] = new CountMap()
    try:
        if emit is None and limit is None:
            with nogil, parallel(num_threads=nthreads):
                buf = <uint64_t*>malloc(3 * w * 8)
                for o1 in prange(1, v + 1, schedule="dynamic"):
                    tid = openmp.omp_get_thread_num()
                    tot[tid] += scan_o1(o1, cn, v, w, shift, lowmask, anti, universe, iw,
                                        buf, buf + w, buf + 2 * w,
                                        do_classify, do_check, maps[tid], &vio[tid],
                                        -1, NULL, &eused, &ecap)
                free(buf)
            total = np.sum(tot)
            per_worker = [int(x) for x in tot]
        else:
            buf = <uint64_t*>malloc(3 * w * 8)
            if emit is not None:
                ecap = 15 * 4096
                ebuf = <uint32_t*>malloc(ecap * 4)
                ebp = &ebuf
            try:
                for o1 in range(1, v + 1):
                    with nogil:
                        total += scan_o1(o1, cn, v, w, shift, lowmask, anti, universe, iw,
                                         buf, buf + w, buf + 2 * w,
                                         do_classify, do_check, maps[0], &vio[0],
                                         -1 if cap < 0 else cap - total,
                                         ebp, &eused, &ecap)
                    if emit is not None:
                        for r in range(<int>(eused // 15)):
                            row = []
                            for k in range(15):
                                row.append(ebuf[r * 15 + k])
                            emit(tuple(row))
                        eused = 0
                    if cap >= 0 and total >= cap:
                        break
            finally:
                free(buf)
                free(ebuf)
            per_worker = [int(total)]

        counts = {}
        for t in range(nthreads):
            it = deref(maps[t]).begin()
            while it != deref(maps[t]).end():
                counts[deref(it).first] = counts.get(deref(it).first, 0) + deref(it).second
                inc(it)
    finally:
        for t in range(nthreads):
            del maps[t]

    return RunResult(total=int(total), per_worker=per_worker,
                     counts=counts if do_classify else None,
                     violations=int(np.sum(vio)), elapsed=time.monotonic() - t0)
