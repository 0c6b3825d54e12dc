"""Bit-packed arithmetic on N-qubit Pauli observables.

An observable is a word of N letters from {I, X, Y, Z}.  We pack it into a
single integer, two bits per letter, with qubit 1 (the leftmost letter) in
the most significant pair:

    I = 00    X = 01    Z = 10    Y = 11

The high bit of each pair is the letter's x-plane coordinate, the low bit
its z-plane coordinate, i.e. X = (0,1), Z = (1,0), Y = (1,1).  Two payoffs:

* unsigned integer comparison of codes is exactly the lexicographic word
  order with I < X < Z < Y per letter, leftmost letter dominant;
* the code of a product word is the XOR of the input codes, and the
  symplectic form (0 = commute, 1 = anticommute) is one AND-XOR-parity pass.

The all-identity word (code 0) is not a valid observable: the nonzero codes
1 .. 4**n - 1 are precisely the points of the rank-n binary symplectic polar
space.  Code 0 only ever appears as the word part of a phased product.

Phases are tracked as exponents of i modulo 4, so a product is i**k * word.
Single-letter products follow X.Y = iZ, Y.Z = iX, Z.X = iY and the reversed
orders pick up -i.
"""

LETTERS = "IXZY"

# per-letter low-bit mask 0b0101...; reused by every bit-sliced routine
def _low_mask(n):
    return ((1 << (2 * n)) - 1) // 3


def parse(word):
    """Parse a letter word into its code. Rejects I**n and bad letters."""
    if not word:
        raise ValueError("empty word")
    code = 0
    for ch in word:
        v = LETTERS.find(ch)
        if v < 0:
            raise ValueError("invalid letter %r in %r" % (ch, word))
        code = (code << 2) | v
    if code == 0:
        raise ValueError("the all-identity word is not an observable")
    return code


def to_word(code, n):
    """Inverse of parse; code 0 renders as the all-identity word."""
    assert 0 <= code < (1 << (2 * n))
    return "".join(LETTERS[(code >> (2 * j)) & 3] for j in range(n - 1, -1, -1))


def parse_all(words):
    """Parse a sequence of equal-length words; returns (n, list of codes)."""
    words = list(words)
    if not words:
        raise ValueError("no words given")
    n = len(words[0])
    for w in words:
        if len(w) != n:
            raise ValueError("mixed word lengths: %r vs %r" % (words[0], w))
    return n, [parse(w) for w in words]


def compare(a, b):
    """-1/0/+1 word order; identical to comparing the raw codes."""
    return (a > b) - (a < b)


def symplectic(a, b):
    """Symplectic form over GF(2): 0 iff the observables commute."""
    n = max(a.bit_length(), b.bit_length(), 2) + 1 >> 1
    m = _low_mask(n)
    return ((((a >> 1) & b) ^ ((b >> 1) & a)) & m).bit_count() & 1


def phase_exp(a, b):
    """Exponent k (mod 4) such that a.b = i**k * (a XOR b).

    Bit-sliced over all letters at once: plus picks out the letter pairs
    contributing +i (X.Y, Y.Z, Z.X), minus the reversed pairs (-i).
    """
    n = max(a.bit_length(), b.bit_length(), 2) + 1 >> 1
    m = _low_mask(n)
    ax, az = (a >> 1) & m, a & m
    bx, bz = (b >> 1) & m, b & m
    plus = (~ax & az & bx & bz) | (ax & az & bx & ~bz) | (ax & ~az & ~bx & bz)
    minus = (ax & az & ~bx & bz) | (ax & ~az & bx & bz) | (~ax & az & bx & ~bz)
    return ((plus & m).bit_count() + 3 * (minus & m).bit_count()) & 3


def multiply(a, b):
    """Phased product (phase_exp, word code); word 0 means the identity."""
    return phase_exp(a, b), a ^ b


def abs_product(a, b):
    """Product word of two commuting observables, sign dropped."""
    if symplectic(a, b):
        raise ValueError("inputs anticommute; their product is not Hermitian")
    if a == b:
        raise ValueError("a*a is the identity, which is not an observable")
    return a ^ b


def identity_weight(code, n):
    """How many of the n letters are I."""
    assert 0 < code < (1 << (2 * n))
    m = _low_mask(n)
    return n - ((code | (code >> 1)) & m).bit_count()
