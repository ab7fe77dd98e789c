import csv
import subprocess
import sys

import pytest

from rkforge import tableau_io
from rkforge.cli import main
from rkforge.tableau import TABLE46_PARAMS, FamilyParams, construct_family

PARAMS = [str(getattr(TABLE46_PARAMS, n)) for n in FamilyParams.names]


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_table46(capsys):
    code, out, _ = run(capsys, "verify", "--pair", "table46", "--order", "6")
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert [int(r["order"]) for r in rows] == [1, 2, 3, 4, 5, 6]
    assert max(float(r["max_abs_tau"]) for r in rows) < 1e-13


def test_verify_fails_beyond_order(capsys):
    code, _, _ = run(capsys, "verify", "--pair", "table46", "--order", "7")
    assert code == 1


def test_metrics_dopri(capsys):
    code, out, _ = run(capsys, "metrics", "--pair", "dormand_prince")
    assert code == 0
    assert "0.00039908" in out
    assert "max_abs_a" in out


def test_derive_duplicate_nodes(capsys):
    code, _, err = run(capsys, "derive", "--params", "0.1", "0.5", "0.5", "0.6", "0.7", "0.8", "0", "0", "0", "0", "0")
    assert code == 1
    assert "degenerate family" in err


def test_usage_errors(capsys):
    assert run(capsys, "metrics", "--pair", "table46", "--bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "--pair", "no_such_pair.tbl")[0] == 2


def test_derive_round_trip(capsys, tmp_path):
    path = tmp_path / "t46.tbl"
    code, _, _ = run(capsys, "derive", "--params", *PARAMS, "--out", str(path), "--name", "t46")
    assert code == 0
    pair = tableau_io.read(path)
    assert pair.orders == (4, 6)
    memory = tmp_path / "memory.tbl"
    tableau_io.write(construct_family(TABLE46_PARAMS, name="t46"), memory)
    reports = []
    for p in (path, memory):
        code, out, _ = run(capsys, "verify", "--pair", str(p), "--order", "6")
        assert code == 0
        reports.append(out)
    assert reports[0] == reports[1]


def _header(path):
    with open(path) as fh:
        return next(csv.reader(fh))


def test_file_commands(capsys, tmp_path):
    out = tmp_path / "steps.csv"
    assert run(capsys, "solve", "--pair", "table46", "--problem", "A3", "--atol", "1e-6", "--out", str(out))[0] == 0
    assert _header(out)[:3] == ["t", "h", "x0"]
    out = tmp_path / "region.csv"
    assert run(capsys, "stability", "--pair", "table46", "--resolution", "101", "--out", str(out))[0] == 0
    assert len(_header(out)) >= 2
    out = tmp_path / "curve.csv"
    assert run(capsys, "dense", "--pair", "table46", "--points", "51", "--out", str(out))[0] == 0
    assert _header(out)[0] == "theta"
    out = tmp_path / "circle.csv"
    assert run(capsys, "circle", "--pair", "table46", "--out", str(out))[0] == 0
    assert _header(out)[:3] == ["kind", "index", "theta"]
    bench = tmp_path / "bench"
    code = run(capsys, "bench", "--pairs", "table46", "--problems", "A3", "--atols", "1e-3:1e-5:1dec", "--out", str(bench))[0]
    assert code == 0
    assert len(list(bench.glob("*.csv"))) == 1
    interp = run(capsys, "interp", "--pair", "table46")
    assert interp[0] == 0


def test_optimize_small(capsys, tmp_path):
    out = tmp_path / "opt.tbl"
    trace = tmp_path / "trace.csv"
    code, text, _ = run(capsys, "optimize", "--objective", "a", "--starts", "1", "--budget", "20",
                        "--out", str(out), "--trace", str(trace), "--rationalize", "1000")
    assert code == 0
    assert tableau_io.read(out).params is not None
    assert _header(trace) == ["start", "eval", "objective", "feasible"]


def test_negative_rational_arguments(capsys):
    code, out, _ = run(capsys, "derive", "--params", *PARAMS)
    assert code == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rkforge", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "derive" in res.stdout
