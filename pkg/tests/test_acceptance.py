"""Release gate: one test and one printed verdict line per criterion.

Criteria touching five-qubit space are opt-in (DOILY_EXTENDED=1) because the
full run takes ~10 minutes on one core; everything else finishes in seconds.
"""

import itertools
import os
import random
import time
from importlib import resources

import pytest

from doily import classify, contextuality, counting, engine, geometry, kernels, pauli

EXTENDED = os.environ.get("DOILY_EXTENDED") == "1"

# (qubits, linear, quadratic, total) golden digits
FORMULA_TABLE = [
    (2, 1, 0, 1),
    (3, 336, 1008, 1344),
    (4, 91392, 1370880, 1462272),
    (5, 23744512, 1495904256, 1519648768),
    (6, 6100942848, 1555740426240, 1561841369088),
    (7, 1563272675328, 1599227946860544, 1600791219535872),
    (8, 400289425260544, 1639185196441927680, 1639585485867188224),
    (9, 102479956839235584, 1678929132897196572672, 1679031612854035808256),
]

OVOID_COUNTS = {2: 6, 3: 2016, 4: 548352, 5: 142467072}

N5_TOTAL = 1519648768
N5_SPLIT = (23744512, 1495904256)
N5_ROWS = (447, 89, 358)


def _verdict(capsys, ok, label, detail=""):
    with capsys.disabled():
        line = ("PASS " if ok else "FAIL ") + label
        if detail:
            line += "  [" + detail + "]"
        print(line)
    assert ok, label + " " + detail


def _skip(capsys, label):
    with capsys.disabled():
        print("SKIP " + label + "  [set DOILY_EXTENDED=1]")
    pytest.skip("extended run not requested")


# one ~10-minute run shared by criteria 6 and 9; computed only on demand
_N5_CACHE = []


def five_qubit_run():
    if not _N5_CACHE:
        _N5_CACHE.append(
            kernels.run(5, threads=os.cpu_count() or 1, classify=True, check=True)
        )
    return _N5_CACHE[0]


def test_criterion_01_formula_digits(capsys):
    t0 = time.perf_counter()
    got = counting.table(9)
    dt = time.perf_counter() - t0
    _verdict(
        capsys,
        got == FORMULA_TABLE and dt < 1.0,
        "criterion-1 closed-form counts N=2..9 digit-exact, <1s",
        "%.3fs" % dt,
    )


def test_criterion_02_ratio_identity(capsys):
    ok = all(
        counting.count_quadratic(n) == (4 ** (n - 2) - 1) * counting.count_linear(n)
        for n in range(2, 17)
    )
    _verdict(capsys, ok, "criterion-2 quadratic = (4^(N-2)-1) * linear, N=2..16")


def _brute_ovoids_two_qubits():
    hits = 0
    for combo in itertools.combinations(range(1, 16), 5):
        if any(not pauli.symplectic(a, b) for a, b in itertools.combinations(combo, 2)):
            continue
        acc = 0
        for c in combo:
            acc ^= c
        hits += acc == 0
    return hits


def test_criterion_03_ovoid_counts(capsys):
    oracle = _brute_ovoids_two_qubits()
    got = {n: kernels.count_ovoids(n).total for n in (2, 3)}
    t0 = time.perf_counter()
    got[4] = kernels.count_ovoids(4).total
    dt4 = time.perf_counter() - t0
    ok = oracle == 6 and dt4 < 60.0
    ok = ok and all(got[n] == OVOID_COUNTS[n] for n in (2, 3, 4))
    detail = "oracle=%d n4=%.2fs" % (oracle, dt4)
    if EXTENDED:
        got[5] = kernels.count_ovoids(5, threads=os.cpu_count() or 1).total
        ok = ok and got[5] == OVOID_COUNTS[5]
        detail += " n5=%d" % got[5]
    _verdict(capsys, ok, "criterion-3 ovoid counts 6/2016/548352 exact", detail)


def test_criterion_04_enumeration_totals(capsys):
    results = {n: kernels.run(n, classify=True) for n in (2, 3)}
    t0 = time.perf_counter()
    results[4] = kernels.run(4, classify=True)
    dt4 = time.perf_counter() - t0
    totals = {n: r.total for n, r in results.items()}
    splits = {n: classify.build_table(n, r.counts).split() for n, r in results.items()}
    ok = totals == {2: 1, 3: 1344, 4: 1462272}
    ok = ok and splits[3] == (336, 1008) and splits[4] == (91392, 1370880)
    ok = ok and dt4 < 300.0
    _verdict(
        capsys,
        ok,
        "criterion-4 enumeration totals 1/1344/1462272 with splits",
        "n4=%.2fs" % dt4,
    )


def _golden_table(name):
    return classify.table_from_csv(
        resources.files("doily.data").joinpath(name).read_text()
    )


def test_criterion_05_type_tables(capsys):
    got3 = classify.build_table(3, kernels.run(3, classify=True).counts)
    got4 = classify.build_table(4, kernels.run(4, classify=True).counts)
    diffs = classify.diff_tables(got3, _golden_table("types_n3.csv"))
    diffs += classify.diff_tables(got4, _golden_table("types_n4.csv"))
    spot = (
        len(got3.rows) == 11
        and got3.rows[0].signature == (1, 5, 9)
        and got3.rows[0].character == "q"
        and got3.rows[0].histogram == {"6": 108}
        and len(got4.rows) == 95
        and got4.rows[0].signature == (0, 3, 0, 12)
        and got4.rows[0].character == "q"
        and got4.rows[0].histogram == {"3": 216, "7A": 648, "9": 648}
    )
    _verdict(
        capsys,
        not diffs and spot,
        "criterion-5 type tables N=3 (11 rows) and N=4 (95 rows) cell-exact",
        "; ".join(diffs[:3]),
    )


def test_criterion_06_five_qubit_census(capsys):
    if not EXTENDED:
        _skip(capsys, "criterion-6 five-qubit census")
    res = five_qubit_run()
    table = classify.build_table(5, res.counts)
    linear_rows = sum(1 for r in table.rows if r.character == "l")
    ok = (
        res.total == N5_TOTAL
        and table.split() == N5_SPLIT
        and len(table.rows) == N5_ROWS[0]
        and (linear_rows, len(table.rows) - linear_rows) == N5_ROWS[1:]
        and res.violations == 0
        and res.elapsed <= 7200.0
    )
    _verdict(
        capsys,
        ok,
        "criterion-6 N=5 total 1519648768, 447 rows (89 l / 358 q), <=2h",
        "%.0fs" % res.elapsed,
    )


def test_criterion_07_contextuality_degree(capsys, doilies3):
    refs = contextuality.reference_valuations()
    worst = 0.0
    ok = True
    for tag in geometry.CONFIG_TAGS:
        t0 = time.perf_counter()
        ok = ok and contextuality.degree(refs[tag]) == 3
        worst = max(worst, time.perf_counter() - t0)
    ok = ok and all(
        contextuality.degree(classify.valuation_bits(d)) == 3 for d in doilies3
    )
    _verdict(
        capsys,
        ok and worst < 1.0,
        "criterion-7 degree 3 for 12 configurations and all 1344 N=3 doilies",
        "slowest query %.3fs" % worst,
    )


def test_criterion_08_invariant_suite(capsys):
    bad = {}
    for n in (2, 3, 4):
        res = kernels.run(n, classify=True, check=True)
        bad[n] = res.violations
        assert res.total == counting.count_total(n)
    ok = set(bad.values()) == {0}
    _verdict(
        capsys,
        ok,
        "criterion-8 per-doily invariant checks, zero violations at N<=4",
        "violations=%r" % bad,
    )


def test_criterion_09_quadric_structure(capsys):
    if not EXTENDED:
        _skip(capsys, "criterion-9 five-qubit quadric checks")
    table = classify.build_table(5, five_qubit_run().counts)
    ok = True
    for row in table.rows:
        # row-level quadric membership count: letters B and D tally the
        # observables with an odd number of identity letters
        cls = classify.QUADRIC_CLASSES.get(row.signature[1] + row.signature[3])
        ok = ok and cls is not None
        if row.character == "l":
            ok = ok and cls != "perpial"
        pivot = (row.signature[1] + row.signature[2]) & 1
        for tag, cnt in row.histogram.items():
            if cnt:
                ok = ok and int(tag.rstrip("AB")) & 1 == pivot
    _verdict(
        capsys,
        ok,
        "criterion-9 quadric classes valid, no linear perpial, parity link",
        "%d rows" % len(table.rows),
    )


def test_criterion_10_hexad(capsys, doilies3):
    rng = random.Random(0x60112)
    quadratics = [d for d in doilies3 if not classify.is_linear(d)]
    ok = True
    for d in rng.sample(quadratics, 100):
        six = engine.hexad(d)
        ok = ok and len({frozenset(h.points) for h in six}) == 6
        own = set(engine.ovoids_of(d))
        for h in six:
            engine.validate_doily(h)
            ok = ok and classify.is_linear(h)
            ok = ok and len(own & set(engine.ovoids_of(h))) == 1
    _verdict(
        capsys,
        ok,
        "criterion-10 hexad of 100 random quadratics: 6 linear, one shared ovoid",
    )
