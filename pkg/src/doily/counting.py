"""Exact closed-form counts of subspaces and doilies.

Everything here is plain integer arithmetic on arbitrary-precision ints;
intermediate ratios use Fraction so that every division is checked to be
exact (the closed forms contain /3 terms and, for small N, negative powers
of two that must cancel against vanishing binomial factors).

Conventions: projective dimensions throughout; gaussian_binomial(n, k, q)
counts (k-1)-dimensional subspaces of PG(n-1, q); the doily-count formulas
treat out-of-range binomials as zero, which is what makes them valid all
the way down to N = 2.
"""

from fractions import Fraction


def gaussian_binomial(n, k, q=2):
    """Number of (k-1)-dimensional projective subspaces of PG(n-1, q)."""
    if k < 0 or k > n:
        raise ValueError("need 0 <= k <= n, got n=%d k=%d" % (n, k))
    r = Fraction(1)
    for i in range(1, k + 1):
        r *= Fraction(q ** (n - k + i) - 1, q**i - 1)
    assert r.denominator == 1
    return r.numerator


def _gb(n, k, q=2):
    """gaussian_binomial with the out-of-range-is-zero convention."""
    if k < 0 or k > n:
        return 0
    return gaussian_binomial(n, k, q)


def subspaces_through_fixed(n, k, l, q=2):
    """(k-1)-subspaces of PG(n-1, q) through a fixed (l-1)-subspace."""
    if not 0 <= l <= k <= n:
        raise ValueError("need 0 <= l <= k <= n")
    return gaussian_binomial(n - l, k - l, q)


def ti_subspaces(N, k):
    """Totally isotropic k-dimensional subspaces of the rank-N binary
    symplectic polar space (k = 0 gives the 4**N - 1 points, k = N-1 the
    generators)."""
    if not -1 <= k <= N - 1:
        raise ValueError("need -1 <= k <= N-1")
    r = _gb(N, k + 1)
    for i in range(1, k + 2):
        r *= 2 ** (N + 1 - i) + 1
    return r


def ti_through_fixed(N, k, m):
    """Totally isotropic k-subspaces through a fixed totally isotropic
    m-subspace of the rank-N space."""
    if not -1 <= m <= k <= N - 1:
        raise ValueError("need -1 <= m <= k <= N-1")
    r = _gb(N - m - 1, k - m)
    for i in range(1, k - m + 1):
        r *= 2 ** (N - m - i) + 1
    return r


def _sympl_prod(N, j):
    """prod_{i=1..j} (2**(N+1-i) + 1).

    Exponents can dip below zero for small N; the factor is then only ever
    multiplied by a vanishing binomial, but it must stay exact, hence
    Fraction rather than int powers.
    """
    p = Fraction(1)
    for i in range(1, j + 1):
        p *= Fraction(2) ** (N + 1 - i) + 1
    return p


def _as_count(x):
    assert x.denominator == 1 and x >= 0, x
    return x.numerator


def count_linear(N):
    """Number of linear doilies: 3-subspaces of PG(2N-1,2) devoid of
    totally isotropic planes, each spanned by exactly one doily."""
    if N < 2:
        raise ValueError("N >= 2 required")
    total = Fraction(_gb(2 * N, 4))
    ti = _gb(N, 4) * _sympl_prod(N, 4)
    mixed = Fraction(7 * _gb(N, 3), 3) * _sympl_prod(N, 3) * Fraction(2) ** (2 * N - 6)
    return _as_count(total - ti - mixed)


def count_quadratic(N):
    """Number of quadratic doilies: 16 per 4-subspace of PG(2N-1,2) devoid
    of totally isotropic 3-subspaces.  Valid down to N = 2 (gives 0)."""
    if N < 2:
        raise ValueError("N >= 2 required")
    total = Fraction(_gb(2 * N, 5))
    ti = _gb(N, 5) * _sympl_prod(N, 5)
    mixed = Fraction(15 * _gb(N, 4), 3) * _sympl_prod(N, 4) * Fraction(2) ** (2 * N - 8)
    return _as_count(16 * (total - ti - mixed))


def count_total(N):
    """All doilies, linear plus quadratic."""
    return count_linear(N) + count_quadratic(N)


def theta2(N):
    """Planes of PG(2N-1,2) with exactly three totally isotropic lines.
    Redundant route to count_linear, kept as a cross-check."""
    r = Fraction(2 ** (2 * N), 16)
    for i in (1, 2):
        r *= Fraction(2 ** (N - 2 + i) - 1, 2**i - 1)
        r *= 2 ** (N + 1 - i) + 1
    return _as_count(r)


def theta3(N):
    """3-subspaces of PG(2N-1,2) with exactly three totally isotropic
    planes.  Redundant route to count_quadratic, kept as a cross-check."""
    r = Fraction(7, 3) * Fraction(2) ** (2 * N - 6)
    for i in (1, 2, 3):
        r *= Fraction(2 ** (N - 3 + i) - 1, 2**i - 1)
        r *= 2 ** (N + 1 - i) + 1
    return _as_count(r)


def count_linear_compact(N):
    """count_linear via the theta2 route (N >= 3)."""
    return _as_count(Fraction(4, 15) * 4 ** (N - 3) * theta2(N))


def count_quadratic_compact(N):
    """count_quadratic via the theta3 route (N >= 3)."""
    return _as_count(Fraction(48, 15) * 4 ** (N - 3) * theta3(N))


def table(max_n):
    """Rows (N, linear, quadratic, total) for N = 2 .. max_n."""
    return [(n, count_linear(n), count_quadratic(n), count_total(n)) for n in range(2, max_n + 1)]
