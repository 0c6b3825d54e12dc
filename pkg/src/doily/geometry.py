"""The fixed combinatorial structure shared by every doily.

The 15 abstract points are identified with the two-qubit observables,
i.e. with the nonzero codes 1..15 of the pauli module.  Lines are the
XOR-closed commuting triples {a, b, a^b}; this identification makes the
whole incidence structure derivable instead of transcribed:

* 15 lines, 3 points per line, 3 lines per point, triangle-free;
* 6 ovoids (5-point caps meeting every line once);
* 15 perp-sets (a point plus its 6 collinear points);
* 10 grids (9-point 3x3 subconfigurations carrying 6 of the lines).

Ovoids, perps and grids together are the 31 geometric hyperplanes.

A second, equivalent naming of the points by duads (2-subsets of
{1,..,6}) is derived from the reference ovoid: ovoid point i maps to duad
(i,6) and the product of ovoid points i and j to duad (i,j).  Lines then
correspond to synthemes (partitions of {1,..,6} into three duads).  The
duad naming is what the negative-line reference patterns below are
expressed in, and it also drives the ovoid-to-linear-doily construction.

Completion data: COMPLETION lists nine (p, q, r) point triples, r = p^q,
in an order where p and q are always available once the reference ovoid
and its center have been placed; applying them fills all 15 points.
"""

import itertools

from . import pauli

POINTS = tuple(range(1, 16))

# reference ovoid, its unicentric triad (first three points) and center
OVOID_REF = (1, 2, 7, 11, 15)
TRIAD_REF = (1, 2, 7)
CENTER_REF = 4

# tricentric triad probing the linear/quadratic character: XY, ZY, YI
TRICENTRIC_TRIAD = (7, 11, 12)


def _lines():
    out = []
    for a, b in itertools.combinations(POINTS, 2):
        c = a ^ b
        if c > b and pauli.symplectic(a, b) == 0:
            out.append((a, b, c))
    return tuple(sorted(out))


LINES = _lines()
LINE_INDEX = {frozenset(t): i for i, t in enumerate(LINES)}


def _ovoids():
    out = []
    for five in itertools.combinations(POINTS, 5):
        if all(pauli.symplectic(a, b) for a, b in itertools.combinations(five, 2)):
            out.append(five)
    return tuple(out)


OVOIDS = _ovoids()

PERPS = tuple(
    tuple(sorted([p] + [q for q in POINTS if q != p and pauli.symplectic(p, q) == 0]))
    for p in POINTS
)


def _grids():
    """Close each disjoint line pair into its grid: the three transversals
    exist and the third points of the transversals form the opposite line."""
    grids = {}
    for i, j in itertools.combinations(range(len(LINES)), 2):
        la, lb = set(LINES[i]), set(LINES[j])
        if la & lb:
            continue
        pts = la | lb
        for a in la:
            partners = [b for b in lb if pauli.symplectic(a, b) == 0]
            assert len(partners) == 1
            pts.add(a ^ partners[0])
        key = tuple(sorted(pts))
        assert len(key) == 9
        lines_in = tuple(k for k, t in enumerate(LINES) if set(t) <= pts)
        assert len(lines_in) == 6
        grids[key] = lines_in
    return tuple(sorted(grids)), tuple(grids[k] for k in sorted(grids))


GRIDS, GRID_LINES = _grids()

# order of filling the nine non-root points: each r is the product of two
# points already placed (root points first, then earlier completions)
COMPLETION = (
    (4, 1, 5),
    (4, 2, 6),
    (4, 7, 3),
    (11, 5, 14),
    (11, 6, 13),
    (11, 3, 8),
    (15, 5, 10),
    (15, 6, 9),
    (15, 3, 12),
)

# duad naming derived from the reference ovoid
CODE_OF_DUAD = {}
for _i, _p in enumerate(OVOID_REF, start=1):
    CODE_OF_DUAD[(_i, 6)] = _p
for _i, _j in itertools.combinations(range(1, 6), 2):
    CODE_OF_DUAD[(_i, _j)] = OVOID_REF[_i - 1] ^ OVOID_REF[_j - 1]
DUAD_OF_CODE = {v: k for k, v in CODE_OF_DUAD.items()}

# the 15 lines spelled as synthemes, in the numbering the reference
# patterns below use (1-based)
_SYNTHEMES = (
    ((2, 5), (1, 4), (3, 6)),
    ((3, 6), (4, 5), (1, 2)),
    ((1, 2), (3, 4), (5, 6)),
    ((5, 6), (2, 4), (1, 3)),
    ((1, 3), (4, 6), (2, 5)),
    ((1, 2), (3, 5), (4, 6)),
    ((1, 4), (2, 3), (5, 6)),
    ((1, 3), (2, 6), (4, 5)),
    ((3, 6), (1, 5), (2, 4)),
    ((2, 5), (1, 6), (3, 4)),
    ((2, 6), (1, 4), (3, 5)),
    ((2, 3), (4, 6), (1, 5)),
    ((3, 5), (2, 4), (1, 6)),
    ((1, 5), (3, 4), (2, 6)),
    ((1, 6), (4, 5), (2, 3)),
)

# the twelve achievable negative-line patterns, one representative each,
# as sets of syntheme numbers; tags 7/8 split into A/B variants
_PATTERN_SYNTHEMES = {
    "3": (2, 4, 14),
    "4": (2, 3, 4, 10),
    "5": (1, 2, 3, 4, 5),
    "6": (1, 2, 4, 5, 10, 14),
    "7A": (1, 3, 5, 11, 12, 13, 15),
    "7B": (2, 3, 4, 6, 7, 8, 9),
    "8A": (2, 4, 6, 7, 8, 9, 10, 14),
    "8B": (1, 5, 10, 11, 12, 13, 14, 15),
    "9": (3, 6, 7, 8, 9, 11, 12, 13, 15),
    "10": (6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    "11": (1, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15),
    "12": (1, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15),
}

CONFIG_TAGS = ("3", "4", "5", "6", "7A", "7B", "8A", "8B", "9", "10", "11", "12")


def _syntheme_line_index(syn):
    return LINE_INDEX[frozenset(CODE_OF_DUAD[d] for d in syn)]


_SYNTHEME_TO_LINE = tuple(_syntheme_line_index(s) for s in _SYNTHEMES)

# tag -> frozenset of indices into LINES
PATTERNS = {
    tag: frozenset(_SYNTHEME_TO_LINE[k - 1] for k in ks)
    for tag, ks in _PATTERN_SYNTHEMES.items()
}

# point-coverage (number of points on at least one negative line) separates
# the A/B variants at 7 and 8 negative lines
def pattern_coverage(line_indices):
    cov = set()
    for k in line_indices:
        cov.update(LINES[k])
    return len(cov)


COVERAGE_SPLIT = {
    (7, 15): "7A",
    (7, 13): "7B",
    (8, 15): "8A",
    (8, 13): "8B",
}


def _selfcheck():
    assert len(LINES) == 15 and len(OVOIDS) == 6 and len(GRIDS) == 10
    # 3 lines per point, triangle-free
    for p in POINTS:
        assert sum(p in t for t in LINES) == 3
    for ta, tb in itertools.combinations(LINES, 2):
        assert len(set(ta) & set(tb)) <= 1
    # every ovoid: pairwise anticommuting, zero XOR
    for o in OVOIDS:
        x = 0
        for p in o:
            x ^= p
        assert x == 0
    # kernels rely on the reference ovoid being the first (lex-smallest)
    assert OVOIDS[0] == OVOID_REF
    # the center commutes with the triad and anticommutes with the rest
    for p in OVOID_REF:
        want = 0 if p in TRIAD_REF else 1
        assert pauli.symplectic(CENTER_REF, p) == want
    # completion is XOR-consistent, uses only already-placed points, and
    # together with the root covers everything exactly once
    placed = set(OVOID_REF) | {CENTER_REF}
    for p, q, r in COMPLETION:
        assert p in placed and q in placed and r not in placed
        assert r == p ^ q
        placed.add(r)
    assert placed == set(POINTS)
    # duads: bijective naming, lines are exactly the synthemes
    assert sorted(CODE_OF_DUAD.values()) == list(POINTS)
    for t in LINES:
        duads = [DUAD_OF_CODE[p] for p in t]
        assert sorted(sum(duads, ())) == [1, 2, 3, 4, 5, 6]
    assert len(set(_SYNTHEME_TO_LINE)) == 15
    # patterns: line count matches the tag, complementary pairs partition
    for tag, ks in PATTERNS.items():
        assert len(ks) == int(tag.rstrip("AB"))
    for ta, tb in (("3", "12"), ("4", "11"), ("5", "10"), ("6", "9"), ("7A", "8A"), ("7B", "8B")):
        assert not (PATTERNS[ta] & PATTERNS[tb])
        assert len(PATTERNS[ta] | PATTERNS[tb]) == 15
    # coverage thresholds used by the classifier
    for (cnt, cov), tag in COVERAGE_SPLIT.items():
        assert len(PATTERNS[tag]) == cnt
        assert pattern_coverage(PATTERNS[tag]) == cov


_selfcheck()
