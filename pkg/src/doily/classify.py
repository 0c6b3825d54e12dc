"""Doily taxonomy: signature, negative lines, character, quadric class.

A doily's type is the pair (signature, character).  The signature counts
observables by identity-letter content: entry 0 is the number of
observables with N-1 identity letters, entry 1 with N-2, and so on down
to entry N-1 counting identity-free observables.  The character is
linear ('l') or quadratic ('q') depending on whether the labeling spans a
3- or 4-dimensional projective subspace; it is read off the phased
product of a fixed tricentric triad, which collapses to the identity word
exactly in the linear case.

Within a type, doilies are further split by their negative-line
configuration, one of twelve tags.  The tag is the number of negative
lines except at 7 and 8, where the count of points covered by negative
lines (15 versus 13) separates an A and a B variant.

Tables aggregate (type, tag) counts.  Row order: decreasing number of
identity-free observables, ties broken by the next signature entry from
the right, and quadratic before linear on full signature ties.
"""

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass

from . import geometry, pauli
from .engine import InvariantError

QUADRIC_CLASSES = {5: "ovoidal", 7: "perpial", 9: "gridal", 15: "special"}


def signature_of(d):
    counts = [0] * d.n
    for p in d.points:
        counts[d.n - 1 - pauli.identity_weight(p, d.n)] += 1
    return tuple(counts)


def line_phase(a, b, c):
    """Phase exponent of the ordered triple product a.b.c."""
    k, ab = pauli.multiply(a, b)
    return (k + pauli.phase_exp(ab, c)) & 3


def line_sign(d, line_index):
    """+1 or -1 for the given abstract line (by index into geometry.LINES)."""
    a, b, c = (d.image(p) for p in geometry.LINES[line_index])
    k = line_phase(a, b, c)
    if k & 1:
        raise InvariantError("line product has imaginary phase")
    return -1 if k == 2 else 1


def valuation_bits(d):
    """Bitmask over the 15 abstract lines; bit i set iff line i is negative."""
    mask = 0
    for i in range(15):
        if line_sign(d, i) < 0:
            mask |= 1 << i
    return mask


def config_tag(neg_mask):
    """Configuration tag for a negative-line bitmask."""
    lines = [i for i in range(15) if neg_mask >> i & 1]
    cnt = len(lines)
    if cnt in (7, 8):
        key = (cnt, geometry.pattern_coverage(lines))
        tag = geometry.COVERAGE_SPLIT.get(key)
        if tag is None:
            raise InvariantError("unrecognized %d-line pattern coverage %d" % key)
        return tag
    if not 3 <= cnt <= 12:
        raise InvariantError("negative-line count %d out of range" % cnt)
    return str(cnt)


def neg_config(d):
    return config_tag(valuation_bits(d))


def is_linear(d):
    """Linear iff the tricentric-triad product collapses to the identity.

    The phase of that product is odd for every doily (the product of three
    pairwise anticommuting observables is anti-Hermitian), so the word part
    alone decides.
    """
    a, b, c = (d.image(p) for p in geometry.TRICENTRIC_TRIAD)
    k, word = pauli.multiply(a, b)
    k = (k + pauli.phase_exp(word, c)) & 3
    word ^= c
    if not k & 1:
        raise InvariantError("tricentric triad product has real phase")
    return word == 0


def quadric_class(d):
    """Intersection class with the distinguished five-qubit quadric (the
    observables having an even number of non-identity letters)."""
    if d.n != 5:
        raise ValueError("quadric classes are defined for N = 5")
    m = sum(1 for p in d.points if (d.n - pauli.identity_weight(p, d.n)) % 2 == 0)
    cls = QUADRIC_CLASSES.get(m)
    if cls is None:
        raise InvariantError("quadric intersection size %d is not a hyperplane" % m)
    return cls


def classify(d):
    """(signature, character, config tag, quadric class or None)."""
    sig = signature_of(d)
    char = "l" if is_linear(d) else "q"
    tag = neg_config(d)
    quad = quadric_class(d) if d.n == 5 else None
    return sig, char, tag, quad


@dataclass(frozen=True)
class TypeRow:
    signature: tuple
    character: str
    histogram: dict

    @property
    def total(self):
        return sum(self.histogram.values())


@dataclass(frozen=True)
class TypeTable:
    n: int
    rows: tuple

    @property
    def total(self):
        return sum(r.total for r in self.rows)

    def split(self):
        """(linear doily count, quadratic doily count)."""
        lin = sum(r.total for r in self.rows if r.character == "l")
        return lin, self.total - lin


def _row_key(signature, character):
    return tuple(-v for v in reversed(signature)) + (character != "q",)


def build_table(n, counts):
    """TypeTable from a {(signature, character, tag): count} mapping."""
    grouped = {}
    for (sig, char, tag), c in counts.items():
        if c:
            grouped.setdefault((sig, char), Counter())[tag] += c
    rows = [
        TypeRow(sig, char, dict(hist))
        for (sig, char), hist in sorted(grouped.items(), key=lambda kv: _row_key(*kv[0]))
    ]
    return TypeTable(n, tuple(rows))


def aggregate(n, classifications):
    """TypeTable from a stream of classify() results."""
    counts = Counter()
    for sig, char, tag, _quad in classifications:
        counts[(sig, char, tag)] += 1
    return build_table(n, counts)


def signature_letters(n):
    return tuple(chr(ord("A") + t) for t in range(n))


def table_to_csv(table):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("type",) + signature_letters(table.n) + ("nu",) + geometry.CONFIG_TAGS)
    for i, row in enumerate(table.rows, start=1):
        cells = [i, *row.signature, row.character]
        cells += [row.histogram.get(tag, "") for tag in geometry.CONFIG_TAGS]
        w.writerow(cells)
    return buf.getvalue()


def table_to_json(table):
    letters = signature_letters(table.n)
    out = []
    for i, row in enumerate(table.rows, start=1):
        rec = {"type": i}
        rec.update(zip(letters, row.signature))
        rec["nu"] = row.character
        for tag in geometry.CONFIG_TAGS:
            rec[tag] = row.histogram.get(tag)
        out.append(rec)
    return json.dumps(out, indent=2) + "\n"


def table_from_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    n = header.index("nu") - 1
    assert header == list(("type",) + signature_letters(n) + ("nu",) + geometry.CONFIG_TAGS)
    out = []
    for rec in rows[1:]:
        sig = tuple(int(x) for x in rec[1 : 1 + n])
        char = rec[1 + n]
        hist = {
            tag: int(x) for tag, x in zip(geometry.CONFIG_TAGS, rec[2 + n :]) if x != ""
        }
        out.append(TypeRow(sig, char, hist))
    return TypeTable(n, tuple(out))


def diff_tables(got, want):
    """Row-level differences between two tables, as human-readable lines."""
    diffs = []
    if got.n != want.n:
        diffs.append("qubit count differs: %d vs %d" % (got.n, want.n))
        return diffs
    for i in range(max(len(got.rows), len(want.rows))):
        g = got.rows[i] if i < len(got.rows) else None
        w = want.rows[i] if i < len(want.rows) else None
        if g != w:
            diffs.append("row %d: got %s, want %s" % (i + 1, _fmt_row(g), _fmt_row(w)))
    return diffs


def _fmt_row(row):
    if row is None:
        return "<missing>"
    hist = " ".join("%s:%d" % (t, row.histogram[t]) for t in geometry.CONFIG_TAGS if t in row.histogram)
    return "%s %s [%s]" % ("-".join(map(str, row.signature)), row.character, hist)
