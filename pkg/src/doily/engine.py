"""Streaming enumeration of N-qubit doilies, reference implementation.

Everything here is plain Python working on packed observable codes; the
kernels package provides equivalent batch implementations for large runs.
The enumeration strategy:

1. walk all ovoids (5-sets of pairwise anticommuting observables whose
   codes XOR to zero) by extending sorted anticommuting 4-tuples - the
   fifth point is forced, so requiring it to exceed the fourth visits
   each ovoid exactly once;
2. for each ovoid, find every center: an observable commuting with the
   three smallest ovoid points and anticommuting with the two largest;
3. complete each (ovoid, center) root into a full doily by the fixed
   product schedule, then keep the doily only when the generating ovoid
   is the smallest of its six (each doily has six ovoids, so it is built
   six times and kept once).

A Doily stores the images of the 15 abstract points; index i of .points
holds the image of abstract point i+1.
"""

from dataclasses import dataclass

from . import geometry, pauli


class InvariantError(Exception):
    """An enumerated object violated a structural invariant."""


@dataclass(frozen=True)
class Doily:
    n: int
    points: tuple

    def image(self, code):
        """Observable labeling the abstract point with the given code."""
        return self.points[code - 1]

    @property
    def point_set(self):
        return frozenset(self.points)

    def line_images(self):
        """The 15 lines as observable triples, in abstract line order."""
        return tuple(tuple(self.image(p) for p in t) for t in geometry.LINES)

    def words(self):
        """The 15 observables as letter strings, abstract point order."""
        return tuple(pauli.to_word(p, self.n) for p in self.points)


def _anti_masks(n):
    """Bitmask per code: bit q set iff q anticommutes with the code."""
    v = (1 << (2 * n)) - 1
    masks = [0] * (v + 1)
    for a in range(1, v + 1):
        m = 0
        for b in range(1, v + 1):
            if pauli.symplectic(a, b):
                m |= 1 << b
        masks[a] = m
    return masks


def _bits_above(mask, floor):
    """Set-bit positions of mask strictly greater than floor, ascending."""
    m = mask >> (floor + 1) << (floor + 1)
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def enumerate_ovoids(n, anti=None):
    """Yield every ovoid of the rank-n space once, as a sorted 5-tuple."""
    if n < 2:
        raise ValueError("N >= 2 required")
    anti = anti or _anti_masks(n)
    v = (1 << (2 * n)) - 1
    for o1 in range(1, v + 1):
        m1 = anti[o1]
        for o2 in _bits_above(m1, o1):
            m2 = m1 & anti[o2]
            for o3 in _bits_above(m2, o2):
                m3 = m2 & anti[o3]
                for o4 in _bits_above(m3, o3):
                    o5 = o1 ^ o2 ^ o3 ^ o4
                    if o5 > o4:
                        # the forced fifth point always anticommutes with
                        # the other four, but cheap to re-check here
                        assert (m3 & anti[o4]) >> o5 & 1
                        yield (o1, o2, o3, o4, o5)


def find_centers(ovoid, anti=None, n=None):
    """Yield observables commuting with ovoid points 1-3 and anticommuting
    with points 4-5.  Ovoid points themselves never qualify."""
    if anti is None:
        if n is None:
            n = (max(ovoid).bit_length() + 1) // 2
        anti = _anti_masks(n)
    o1, o2, o3, o4, o5 = ovoid
    universe = (1 << len(anti)) - 2  # codes 1..V
    cand = ~anti[o1] & ~anti[o2] & ~anti[o3] & anti[o4] & anti[o5] & universe
    while cand:
        low = cand & -cand
        yield low.bit_length() - 1
        cand ^= low


def complete_doily(root, n, validate=True):
    """Grow a (ovoid, center) root into its unique doily.

    Raises InvariantError when the input is not a root (repeated points or
    a commutation/phase violation in the completed labeling).
    """
    ovoid, center = root
    f = [0] * 16
    for p, obs in zip(geometry.OVOID_REF, ovoid):
        f[p] = obs
    f[geometry.CENTER_REF] = center
    for p, q, r in geometry.COMPLETION:
        f[r] = f[p] ^ f[q]
    d = Doily(n, tuple(f[1:]))
    if validate:
        validate_doily(d)
    return d


def validate_doily(d):
    """Check the full doily contract; raises InvariantError on failure."""
    pts = d.points
    if len(set(pts)) != 15 or 0 in pts:
        raise InvariantError("labeling is not 15 distinct observables")
    collinear = set()
    for a, b, c in geometry.LINES:
        collinear.update({(a, b), (a, c), (b, c)})
    for i in range(1, 16):
        for j in range(i + 1, 16):
            want = 0 if (i, j) in collinear else 1
            if pauli.symplectic(d.image(i), d.image(j)) != want:
                raise InvariantError("commutation does not match incidence")
    for a, b, c in d.line_images():
        if a ^ b != c:
            raise InvariantError("line image not closed under product")
        if (pauli.phase_exp(a, b) + pauli.phase_exp(a ^ b, c)) & 1:
            raise InvariantError("line product has imaginary phase")


def ovoids_of(d):
    """The doily's six ovoids, each a sorted observable 5-tuple."""
    return tuple(tuple(sorted(d.image(p) for p in o)) for o in geometry.OVOIDS)


def is_canonical(d, generating_ovoid):
    """True iff the generating ovoid is the smallest of the doily's six."""
    six = ovoids_of(d)
    if generating_ovoid not in six:
        raise ValueError("not an ovoid of this doily")
    return generating_ovoid == min(six)


def enumerate_doilies(n, sink=None, validate=False):
    """Drive the full pipeline; calls sink once per distinct doily and
    returns the total count."""
    if n < 2:
        raise ValueError("N >= 2 required")
    anti = _anti_masks(n)
    count = 0
    for ovoid in enumerate_ovoids(n, anti):
        for center in find_centers(ovoid, anti):
            d = complete_doily((ovoid, center), n, validate=validate)
            if is_canonical(d, ovoid):
                count += 1
                if sink is not None:
                    sink(d)
    return count


def linear_doily_from_ovoid(ovoid, n, validate=True):
    """The unique linear doily through an ovoid: its points are the five
    ovoid observables plus their ten pairwise products, wired up by the
    duad naming (ovoid point i = duad (i,6), product of i and j = (i,j))."""
    f = [0] * 16
    for (i, j), code in geometry.CODE_OF_DUAD.items():
        if j == 6:
            f[code] = ovoid[i - 1]
        else:
            f[code] = ovoid[i - 1] ^ ovoid[j - 1]
    d = Doily(n, tuple(f[1:]))
    if validate:
        validate_doily(d)
    return d


def hexad(d):
    """The six linear doilies built on a quadratic doily's ovoids."""
    from .classify import is_linear

    if is_linear(d):
        raise ValueError("hexad is defined for quadratic doilies only")
    return tuple(linear_doily_from_ovoid(o, d.n) for o in ovoids_of(d))


def reconstruct_doily(words):
    """Rebuild a Doily from its 15 observable strings (any order).

    The labeling is recovered by rooting at the smallest ovoid contained in
    the set; the unique in-set center completes it.
    """
    import itertools

    n, codes = pauli.parse_all(words)
    if len(set(codes)) != 15:
        raise ValueError("need 15 distinct observables")
    best = None
    for five in itertools.combinations(sorted(codes), 5):
        if all(pauli.symplectic(a, b) for a, b in itertools.combinations(five, 2)):
            best = five
            break
    if best is None:
        raise ValueError("no ovoid found; not a doily point set")
    centers = [
        c
        for c in codes
        if c not in best
        and all(pauli.symplectic(c, o) == 0 for o in best[:3])
        and all(pauli.symplectic(c, o) == 1 for o in best[3:])
    ]
    if len(centers) != 1:
        raise ValueError("point set does not complete to a doily")
    d = complete_doily((best, centers[0]), n, validate=True)
    if d.point_set != frozenset(codes):
        raise ValueError("point set does not complete to a doily")
    return d
