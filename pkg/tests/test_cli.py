from __future__ import annotations

import json
import subprocess
import sys

import pytest

from derangb.cli import main, run_suite
from golden import F_PLUS, XI_MINUS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _coeffs(row):
    return [int(c) for c in row["coeffs"]]


def test_tables_fplus_json(capsys):
    code, out, _ = run(capsys, "tables", "--family", "f+", "--max-n", "7", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [r["n"] for r in rows] == list(range(8))
    for r in rows:
        assert _coeffs(r) == F_PLUS[r["n"]]
        assert all(isinstance(c, str) for c in r["coeffs"])
        assert len(r["methods"]) >= 2


def test_tables_ximinus_csv(capsys):
    code, out, _ = run(capsys, "tables", "--family", "xi-", "--max-n", "7", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,coeffs,methods"
    for line in lines[1:]:
        family, n, coeffs, methods = line.split(",")
        assert family == "ximinus"
        assert [int(c) for c in coeffs.split()] == XI_MINUS[int(n)]
        assert "multinomial-sum" in methods.split()


def test_tables_bplus_zero(capsys):
    code, out, _ = run(capsys, "tables", "--family", "b+", "--max-n", "0")
    assert code == 0
    assert out.splitlines()[0].split("\t")[:2] == ["0", "1"]


def test_tables_deterministic(capsys):
    outs = {run(capsys, "tables", "--family", "dB", "--max-n", "5", "--format", fmt)[1]
            for fmt in ("json", "json")}
    assert len(outs) == 1


def test_tables_out_file(capsys, tmp_path):
    target = tmp_path / "t.txt"
    code, out, _ = run(capsys, "tables", "--family", "A", "--max-n", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[3].startswith("3\t")


@pytest.mark.parametrize("argv", [
    ("tables", "--family", "nope", "--max-n", "3"),
    ("tables", "--family", "A"),
    ("tables", "--family", "A", "--max-n", "-1"),
    ("verify", "--suite", "nope"),
    ("bijection", "1,1"),
    ("bijection", "abc"),
    ("frobnicate",),
    ("complex", "--build", "kn", "--n", "9"),
    ("tables", "--family", "A", "--max-n", "3", "--jobs", "0"),
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("suite,max_n", [
    ("main-formula", 6),
    ("localint", 4),
    ("bijection", 5),
    ("decomposition", 5),
    ("gamma", 6),
    ("egf", 5),
    ("recurrences", 6),
    ("relative-local-h", 3),
    ("h-formula", 3),
    ("realroots", 6),
])
def test_verify_suites_pass(capsys, suite, max_n):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--max-n", str(max_n))
    assert code == 0, out
    assert out.startswith("PASS " + suite)


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gamma", "--max-n", "4", "--format", "json", "--timing")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    suite = data["suites"][0]
    assert suite["failures"] == [] and suite["cases"] > 0 and "seconds" in suite


def test_verify_failure_exit_1(capsys, monkeypatch):
    from derangb import families

    broken = [families.Method(m.tag, lambda n: families.IntPoly([0, 99])) if m.tag == "main-formula" else m
              for m in families.METHODS["dB"]]
    monkeypatch.setitem(families.METHODS, "dB", broken)
    keys = [("dB", n, "main-formula") for n in range(3)]
    saved = {k: families._cache.pop(k) for k in keys if k in families._cache}
    try:
        code, out, _ = run(capsys, "verify", "--suite", "main-formula", "--max-n", "2")
    finally:
        for k in keys:
            families._cache.pop(k, None)
        families._cache.update(saved)
    assert code == 1
    assert out.startswith("FAIL main-formula")


def test_suite_result_ok_iff_no_failures():
    res = run_suite("gamma", 3)
    assert res.ok == (not res.failures)


def test_bijection_worked_example(capsys):
    code, out, _ = run(capsys, "bijection", "4,-5,7,1,9,-8,3,-6,-2")
    assert code == 0
    data = json.loads(out)
    assert data["phi"]["sigma0"]["cycles"] == [[4, 1], [7, 3]]
    assert data["phi"]["blocks"] == [[5], [9], [2, 8, 6]]
    assert data["ledger"]["iexcB"] == data["ledger"]["rhs"] == 5
    assert data["identity_holds"]


def test_bijection_single_negative(capsys):
    code, out, _ = run(capsys, "bijection", "-1")
    assert code == 0
    data = json.loads(out)
    assert data["phi"]["sigma0"]["ground"] == [] and data["phi"]["blocks"] == [[1]]


def test_bijection_not_derangement(capsys):
    code, _, err = run(capsys, "bijection", "1,2")
    assert code == 1
    assert "positive fixed point 1" in err


def test_shape(capsys):
    code, out, _ = run(capsys, "shape", "--family", "f+", "--n", "4")
    assert code == 0
    data = json.loads(out)
    assert data["gamma"] == ["0", "15", "57"]
    assert data["real_rooted"] and data["peaks"] == [2]


def test_rootcheck(capsys):
    code, out, _ = run(capsys, "rootcheck", "--family", "B+", "--max-n", "8")
    assert code == 0
    data = json.loads(out)
    assert data["proven"]
    assert all(r["verdict"] == "real-rooted" for r in data["rows"])


def test_complex_commands(capsys):
    code, out, _ = run(capsys, "complex", "--build", "kn", "--n", "3", "--emit", "hpoly")
    assert code == 0 and json.loads(out)["coeffs"] == ["1", "16", "7"]
    code, out, _ = run(capsys, "complex", "--build", "kn", "--n", "3", "--emit", "localh")
    assert json.loads(out)["coeffs"] == ["0", "7", "7"]
    code, out, _ = run(capsys, "complex", "--build", "sd-simplex", "--n", "3", "--emit", "fvector")
    assert json.loads(out)["fvector"] == ["1", "7", "12", "6"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "derangb", "tables", "--family", "A", "--max-n", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[3].split("\t")[1] == "1 + 4x + x^2"
