"""Command-line front end.

Subcommands cover counting formulas, ovoid/doily enumeration streams,
classification tables, contextuality-degree queries, hexad extraction,
and a self-verification suite.  Exit codes: 0 success, 1 usage error,
2 verification failure, 3 invariant breach detected mid-run.
"""

import json
import os
import resource
import sys

import click

from . import classify, contextuality, counting, engine, geometry, kernels, pauli
from .engine import InvariantError

click.UsageError.exit_code = 1

_EXPECT_OVOIDS = {2: 6, 3: 2016, 4: 548352, 5: 142467072}
_EXPECT_N5 = {"total": 1519648768, "linear": 23744512, "rows": 447, "linear_rows": 89}


def _threads(value):
    if value is not None:
        return max(1, value)
    env = os.environ.get("DOILY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _write(text, output):
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _report(result):
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    click.echo(
        "elapsed %.2fs  workers %s  total %d  peak-rss %dKB"
        % (result.elapsed, "/".join(str(c) for c in result.per_worker), result.total, rss),
        err=True,
    )


def _parse_points(text):
    words = text.split()
    if len(words) != 15:
        raise click.UsageError("expected 15 observables, got %d" % len(words))
    try:
        n, codes = pauli.parse_all(words)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    return n, codes


@click.group()
def main():
    """Enumerate, classify, and analyze doilies built from Pauli observables."""


@main.command()
@click.option("--max-qubits", default=9, show_default=True, type=click.IntRange(2))
@click.option("--format", "fmt", default="csv", type=click.Choice(["csv", "json"]), show_default=True)
@click.option("--output", default=None, type=click.Path(dir_okay=False))
def formulas(max_qubits, fmt, output):
    """Closed-form doily counts for N = 2..MAX_QUBITS."""
    rows = counting.table(max_qubits)
    if fmt == "csv":
        lines = ["qubits,linear,quadratic,total"]
        lines += ["%d,%d,%d,%d" % row for row in rows]
        _write("\n".join(lines) + "\n", output)
    else:
        data = [
            {"qubits": n, "linear": dl, "quadratic": dq, "total": d}
            for n, dl, dq, d in rows
        ]
        _write(json.dumps(data, indent=2) + "\n", output)


@main.command()
@click.option("--qubits", required=True, type=click.IntRange(2))
@click.option("--threads", default=None, type=click.IntRange(1))
@click.option("--limit", default=None, type=click.IntRange(0))
@click.option("--emit-points", is_flag=True)
@click.option("--output", default=None, type=click.Path(dir_okay=False))
def ovoids(qubits, threads, limit, emit_points, output):
    """Count (or stream) ovoids: sorted 5-sets of mutually anticommuting
    observables multiplying to the identity word."""
    sink = []
    emit = sink.append if emit_points else None
    try:
        result = kernels.count_ovoids(qubits, threads=_threads(threads), limit=limit, emit=emit)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if emit_points:
        lines = [" ".join(pauli.to_word(c, qubits) for c in row) for row in sink]
        _write("\n".join(lines) + ("\n" if lines else ""), output)
    else:
        _write("%d\n" % result.total, output)
    _report(result)


@main.command()
@click.option("--qubits", required=True, type=click.IntRange(2))
@click.option("--threads", default=None, type=click.IntRange(1))
@click.option("--limit", default=None, type=click.IntRange(0))
@click.option("--emit-points", is_flag=True)
@click.option("--output", default=None, type=click.Path(dir_okay=False))
def enumerate(qubits, threads, limit, emit_points, output):
    """Count (or stream) all distinct doilies, one per line, points sorted."""
    sink = []
    emit = sink.append if emit_points else None
    try:
        result = kernels.run(qubits, threads=_threads(threads), limit=limit, emit=emit)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if emit_points:
        lines = [
            " ".join(pauli.to_word(c, qubits) for c in sorted(row)) for row in sink
        ]
        _write("\n".join(lines) + ("\n" if lines else ""), output)
    else:
        _write("%d\n" % result.total, output)
    _report(result)


@main.command("classify")
@click.option("--qubits", required=True, type=click.IntRange(2))
@click.option("--threads", default=None, type=click.IntRange(1))
@click.option("--format", "fmt", default="csv", type=click.Choice(["csv", "json"]), show_default=True)
@click.option("--output", default=None, type=click.Path(dir_okay=False))
def classify_cmd(qubits, threads, fmt, output):
    """Full enumeration with per-type classification table."""
    try:
        result = kernels.run(qubits, threads=_threads(threads), classify=True)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if result.violations:
        click.echo("invariant breach: %d doilies failed validation" % result.violations, err=True)
        sys.exit(3)
    table = classify.build_table(qubits, result.counts)
    _write(classify.table_to_csv(table) if fmt == "csv" else classify.table_to_json(table) + "\n", output)
    _report(result)


@main.command("contextuality")
@click.option("--config", "tag", default=None, type=click.Choice(list(geometry.CONFIG_TAGS)))
@click.option("--points", default=None, help="15 space-separated observables")
def contextuality_cmd(tag, points):
    """Contextuality degree of a named configuration or a given doily."""
    if (tag is None) == (points is None):
        raise click.UsageError("give exactly one of --config or --points")
    if tag is not None:
        valuation = contextuality.reference_valuations()[tag]
    else:
        _parse_points(points)
        try:
            doily = engine.reconstruct_doily(points.split())
        except (ValueError, InvariantError) as exc:
            raise click.UsageError("not a doily: %s" % exc)
        valuation = classify.valuation_bits(doily)
    click.echo(str(contextuality.degree(valuation)))


@main.command()
@click.option("--points", required=True, help="15 space-separated observables (quadratic doily)")
def hexad(points):
    """The six linear doilies sharing one ovoid each with a quadratic doily."""
    n, _ = _parse_points(points)
    try:
        doily = engine.reconstruct_doily(points.split())
        six = engine.hexad(doily)
    except (ValueError, InvariantError) as exc:
        raise click.UsageError(str(exc))
    for d in six:
        click.echo(" ".join(pauli.to_word(c, n) for c in sorted(d.points)))


@main.command()
@click.option("--qubits", required=True, type=click.IntRange(2, 5))
@click.option("--threads", default=None, type=click.IntRange(1))
@click.option("--table", "table_path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="override the built-in reference classification table")
def verify(qubits, threads, table_path):
    """Re-derive everything for one N and compare against the references."""
    failures = []

    def check(name, ok, detail=""):
        click.echo("%s %s%s" % ("PASS" if ok else "FAIL", name, " " + detail if detail and not ok else ""))
        if not ok:
            failures.append(name)

    ovoid_result = kernels.count_ovoids(qubits, threads=_threads(threads))
    check("ovoid-count", ovoid_result.total == _EXPECT_OVOIDS[qubits],
          "got %d want %d" % (ovoid_result.total, _EXPECT_OVOIDS[qubits]))

    result = kernels.run(qubits, threads=_threads(threads), classify=True, check=True)
    check("invariant-suite", result.violations == 0, "%d violations" % result.violations)

    table = classify.build_table(qubits, result.counts)
    lin, quad = table.split()
    check("total-vs-formula", result.total == counting.count_total(qubits),
          "got %d want %d" % (result.total, counting.count_total(qubits)))
    check("split-vs-formula",
          lin == counting.count_linear(qubits) and quad == counting.count_quadratic(qubits),
          "got %d/%d want %d/%d" % (lin, quad, counting.count_linear(qubits),
                                    counting.count_quadratic(qubits)))

    want = None
    if table_path is not None:
        with open(table_path) as fh:
            want = classify.table_from_csv(fh.read())
    elif qubits in (3, 4):
        from importlib import resources

        text = resources.files("doily.data").joinpath("types_n%d.csv" % qubits).read_text()
        want = classify.table_from_csv(text)
    elif qubits == 2:
        want = classify.table_from_csv("type,A,B,nu,3,4,5,6,7A,7B,8A,8B,9,10,11,12\n"
                                       "1,6,9,l,1,,,,,,,,,,,\n")
    if want is not None:
        diff = classify.diff_tables(table, want)
        check("reference-table", not diff)
        for line in diff:
            click.echo("  " + line)
    else:
        nlin_rows = sum(1 for r in table.rows if r.character == "l")
        check("aggregate-shape",
              result.total == _EXPECT_N5["total"] and lin == _EXPECT_N5["linear"]
              and len(table.rows) == _EXPECT_N5["rows"] and nlin_rows == _EXPECT_N5["linear_rows"],
              "total %d lin %d rows %d lin-rows %d" % (result.total, lin, len(table.rows), nlin_rows))

    degrees = {tag: contextuality.degree(v)
               for tag, v in contextuality.reference_valuations().items()}
    check("degree-configs", all(d == 3 for d in degrees.values()), str(degrees))
    if qubits == 3:
        seen = set()
        engine.enumerate_doilies(3, sink=lambda d: seen.add(contextuality.doily_degree(d)))
        check("degree-every-doily", seen == {3}, str(seen))

    _report(result)
    if failures:
        sys.exit(2)


if __name__ == "__main__":
    main()
