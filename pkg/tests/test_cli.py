"""End-to-end command-line behavior via the click test runner."""

import json
from importlib import resources

import pytest
from click.testing import CliRunner

from doily import geometry
from doily.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_formulas_csv(runner):
    result = runner.invoke(main, ["formulas", "--max-qubits", "4"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "qubits,linear,quadratic,total",
        "2,1,0,1",
        "3,336,1008,1344",
        "4,91392,1370880,1462272",
    ]


def test_formulas_json(runner):
    result = runner.invoke(main, ["formulas", "--max-qubits", "3", "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data[-1] == {"qubits": 3, "linear": 336, "quadratic": 1008, "total": 1344}


def test_formulas_to_file(runner, tmp_path):
    out = tmp_path / "t.csv"
    result = runner.invoke(main, ["formulas", "--max-qubits", "2", "--output", str(out)])
    assert result.exit_code == 0
    assert out.read_text().splitlines()[1] == "2,1,0,1"


def test_classify_two_qubits(runner):
    result = runner.invoke(main, ["classify", "--qubits", "2"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "type,A,B,nu,3,4,5,6,7A,7B,8A,8B,9,10,11,12"
    assert lines[1] == "1,6,9,l,1,,,,,,,,,,,"


def test_classify_three_qubits_matches_reference(runner):
    golden = resources.files("doily.data").joinpath("types_n3.csv").read_text()
    result = runner.invoke(main, ["classify", "--qubits", "3"])
    assert result.exit_code == 0
    assert result.stdout == golden


def test_classify_deterministic_across_thread_counts(runner):
    one = runner.invoke(main, ["classify", "--qubits", "3", "--threads", "1"])
    four = runner.invoke(main, ["classify", "--qubits", "3", "--threads", "4"])
    assert one.stdout == four.stdout


def test_ovoids_stream_two_qubits(runner):
    result = runner.invoke(main, ["ovoids", "--qubits", "2", "--emit-points"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert len(lines) == 6
    assert lines[0] == "IX IZ XY ZY YY"
    assert all(len(line.split()) == 5 for line in lines)


def test_enumerate_stream_limit(runner):
    result = runner.invoke(main, ["enumerate", "--qubits", "3", "--limit", "4", "--emit-points"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert len(lines) == 4
    for line in lines:
        words = line.split()
        assert len(words) == 15
        assert words == sorted(words, key=lambda w: [("I", "X", "Z", "Y").index(c) for c in w])


def test_enumerate_count_only(runner):
    result = runner.invoke(main, ["enumerate", "--qubits", "2"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "1"


def test_contextuality_all_configs(runner):
    for tag in geometry.CONFIG_TAGS:
        result = runner.invoke(main, ["contextuality", "--config", tag])
        assert result.exit_code == 0
        assert result.stdout.strip() == "3"


def test_contextuality_from_points(runner):
    pts = runner.invoke(main, ["enumerate", "--qubits", "3", "--limit", "1", "--emit-points"])
    doily_words = pts.stdout.splitlines()[0]
    result = runner.invoke(main, ["contextuality", "--points", doily_words])
    assert result.exit_code == 0
    assert result.stdout.strip() == "3"


def test_contextuality_usage_errors(runner):
    assert runner.invoke(main, ["contextuality"]).exit_code == 1
    assert runner.invoke(main, ["contextuality", "--config", "3", "--points", "XX"]).exit_code == 1
    assert runner.invoke(main, ["contextuality", "--points", "XX YY"]).exit_code == 1
    garbage = "IX IZ IY XI XX XZ XY ZI ZX ZZ ZY YI YX YZ YQ"
    assert runner.invoke(main, ["contextuality", "--points", garbage]).exit_code == 1


def test_hexad_round_trip(runner):
    quadratic = "IIX IIZ IXY IZY IYY XIY XXI XXX XXZ XZI XZX XZZ XYI XYX XYZ"
    result = runner.invoke(main, ["hexad", "--points", quadratic])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert len(lines) == 6
    assert all(len(line.split()) == 15 for line in lines)


def test_hexad_rejects_linear(runner):
    linear = "IIX IIZ IIY IXI IXX IXZ IXY IZI IZX IZZ IZY IYI IYX IYZ IYY"
    result = runner.invoke(main, ["hexad", "--points", linear])
    assert result.exit_code == 1


def test_verify_passes(runner):
    result = runner.invoke(main, ["verify", "--qubits", "2"])
    assert result.exit_code == 0
    assert "FAIL" not in result.stdout
    assert result.stdout.count("PASS") >= 5


def test_verify_corrupted_reference_fails_with_diff(runner, tmp_path):
    golden = resources.files("doily.data").joinpath("types_n3.csv").read_text()
    bad = tmp_path / "bad.csv"
    bad.write_text(golden.replace("108", "109", 1))
    result = runner.invoke(
        main, ["verify", "--qubits", "3", "--table", str(bad)]
    )
    assert result.exit_code == 2
    assert "FAIL reference-table" in result.stdout
    assert "108" in result.stdout and "109" in result.stdout


def test_usage_exit_codes(runner):
    assert runner.invoke(main, ["enumerate", "--qubits", "1"]).exit_code == 1
    assert runner.invoke(main, ["enumerate"]).exit_code == 1
    assert runner.invoke(main, ["classify", "--qubits", "99"]).exit_code == 1


def test_threads_env_fallback(runner, monkeypatch):
    monkeypatch.setenv("DOILY_THREADS", "2")
    result = runner.invoke(main, ["enumerate", "--qubits", "2"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "1"
