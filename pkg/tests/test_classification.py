"""Per-doily classification and the aggregated type table, pinned to the
reference tables shipped as package data."""

from importlib import resources

import pytest

from doily import classify, engine, geometry
from doily.engine import InvariantError


def _golden(n):
    return resources.files("doily.data").joinpath("types_n%d.csv" % n).read_text()


def test_two_qubit_core_doily():
    d = iter_doilies(2)[0]
    sig, character, tag, quad = classify.classify(d)
    assert sig == (6, 9)
    assert character == "l"
    assert tag == "3"
    assert quad is None


def iter_doilies(n):
    out = []
    engine.enumerate_doilies(n, sink=out.append)
    return out


def test_four_qubit_samples_classify_as_expected():
    linear_words = (
        "IIIX IYZX IYZI ZYXX ZXXZ IZIY IZIZ ZIYI ZZYZ IXZY ZYXI ZZYY ZIYX ZXXY IXZZ"
    )
    quadratic_words = (
        "XXIX XXXX IIXI IXZX ZIII ZXZX XYYX YYZX ZIXI IZZI XIZI XZII ZZZI XZXI YIYI"
    )
    d = engine.reconstruct_doily(linear_words.split())
    sig, character, _, _ = classify.classify(d)
    assert (sig, character) == ((1, 4, 5, 5), "l")
    d = engine.reconstruct_doily(quadratic_words.split())
    sig, character, _, _ = classify.classify(d)
    assert (sig, character) == ((2, 5, 4, 4), "q")


def test_signature_sums_to_fifteen(doilies3):
    for d in doilies3[:100]:
        assert sum(classify.signature_of(d)) == 15


def test_line_signs_multiply_to_identity_word(doilies3):
    d = doilies3[0]
    for li in range(15):
        assert classify.line_sign(d, li) in (-1, 1)
    mask = classify.valuation_bits(d)
    assert bin(mask).count("1") == sum(classify.line_sign(d, li) < 0 for li in range(15))


def test_config_tag_requires_known_shape():
    with pytest.raises(InvariantError):
        classify.config_tag(0b11)  # two negative lines never happen
    with pytest.raises(InvariantError):
        classify.config_tag(0)


def test_quadric_class_only_for_five_qubits(doilies3):
    with pytest.raises(ValueError):
        classify.quadric_class(doilies3[0])


def test_table_matches_reference_n3(doilies3):
    rows = [classify.classify(d) for d in doilies3]
    table = classify.aggregate(3, rows)
    assert classify.table_to_csv(table) == _golden(3)
    lin, quad = table.split()
    assert (lin, quad) == (336, 1008)


def test_reference_table_n4_shape():
    table = classify.table_from_csv(_golden(4))
    assert len(table.rows) == 95
    assert table.total == 1462272
    assert table.split() == (91392, 1370880)
    first, last = table.rows[0], table.rows[-1]
    assert first.signature == (0, 3, 0, 12) and first.character == "q"
    assert first.histogram == {"3": 216, "7A": 648, "9": 648}
    assert last.signature == (6, 9, 0, 0) and last.character == "l"
    assert last.histogram == {"3": 6}


def test_rows_are_ordered_by_reversed_signature():
    for n in (3, 4):
        table = classify.table_from_csv(_golden(n))
        keys = [classify._row_key(r.signature, r.character) for r in table.rows]
        assert keys == sorted(keys)


def test_csv_round_trip():
    for n in (3, 4):
        table = classify.table_from_csv(_golden(n))
        assert classify.table_to_csv(table) == _golden(n)


def test_json_mirrors_csv():
    import json

    table = classify.table_from_csv(_golden(3))
    data = json.loads(classify.table_to_json(table))
    assert len(data) == len(table.rows)
    for row, entry in zip(table.rows, data):
        assert entry["nu"] == row.character
        assert all(entry[letter] == v for letter, v in
                   zip(classify.signature_letters(3), row.signature))
        for tag in geometry.CONFIG_TAGS:
            assert entry[tag] == row.histogram.get(tag)


def test_diff_tables_reports_cell_changes():
    table = classify.table_from_csv(_golden(3))
    assert classify.diff_tables(table, table) == []
    tampered = _golden(3).replace("108", "109", 1)
    other = classify.table_from_csv(tampered)
    diff = classify.diff_tables(table, other)
    assert diff and any("108" in line and "109" in line for line in diff)
