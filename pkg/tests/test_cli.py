import csv
import io
import json
import subprocess
import sys

import pytest

from splitcorr import cli


def _run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_equation_odd(capsys):
    code, out, _ = _run(capsys, "equation", "--n", "5", "--component", "odd")
    obj = json.loads(out)
    assert code == 0
    assert obj["coefficients"] == ["15", "-13", "-3", "1"]
    assert obj["roots"] == ["-3", "1", "5"]


def test_equation_even(capsys):
    code, out, _ = _run(capsys, "equation", "--n", "6", "--component", "B")
    assert code == 0 and json.loads(out)["coefficients"] == ["-15", "-14", "1"]
    code, out, _ = _run(capsys, "equation", "--n", "8", "--sigma")
    obj = json.loads(out)
    assert code == 0 and obj["extra_root_at_minus_one"] == "16"
    code, out, _ = _run(capsys, "equation", "--n", "4", "--component", "P")
    assert code == 0 and json.loads(out)["roots"] == ["0"]


def test_dims_symbolic(capsys):
    code, out, _ = _run(capsys, "dims", "--n", "8", "--symbolic")
    obj = json.loads(out)
    assert code == 0
    assert obj["dimensions"]["d_2"] == {"gx": "15", "gy": "-64", "c": "0"}
    assert obj["extra"] == {"d_-16": {"gx": "0", "gy": "0", "c": "0"}}


def test_dims_numeric_and_csv(capsys):
    code, out, _ = _run(capsys, "dims", "--n", "5", "--gx", "6", "--gy", "0")
    obj = json.loads(out)
    assert code == 0
    assert obj["dimensions"] == {"d_-3": "5", "d_1": "20", "d_5": "0"}
    code, out, _ = _run(capsys, "dims", "--n", "5", "--gx", "6", "--gy", "0", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "component", "eigenvalue", "dimension"]
    assert len(rows) == 4


def test_krawtchouk(capsys):
    code, out, _ = _run(capsys, "krawtchouk", "--n", "5", "--k", "4", "--ell", "1")
    assert code == 0 and json.loads(out)["value"] == "-3"
    code, out, _ = _run(capsys, "krawtchouk", "--n", "4", "--k", "2", "--format", "text")
    assert code == 0 and len(out.strip().splitlines()) == 5


def test_big_integers_are_strings(capsys):
    code, out, _ = _run(capsys, "krawtchouk", "--n", "80", "--k", "40", "--ell", "0")
    value = json.loads(out)["value"]
    assert code == 0 and isinstance(value, str) and int(value) > 2**63


def test_spectrum_and_tridiag(capsys):
    code, out, _ = _run(capsys, "spectrum", "--n", "8", "--k", "6", "--subspace=-e")
    obj = json.loads(out)
    assert code == 0 and obj["minpoly"] == ["-28", "12", "1"] and obj["operator_agrees"]
    code, out, _ = _run(capsys, "tridiag", "--n", "7")
    obj = json.loads(out)
    assert code == 0 and obj["roots"] == ["-5", "-1", "3", "7"]


def test_covering(capsys):
    code, out, _ = _run(capsys, "covering", "--n", "4", "--branches", "8", "--seed", "1")
    obj = json.loads(out)
    assert code == 0 and obj["consistent"]
    assert obj["counts"]["orbits_on_liftings"] == 2
    assert obj["two_cycles_per_branch"] == ["4"] * 8


def test_covering_without_instance_fails(capsys):
    code, _, err = _run(capsys, "covering", "--n", "6", "--branches", "2", "--genus-y", "1", "--seed", "0")
    assert code == 1 and "no instance found" in err


def test_verify_sweep(capsys):
    code, out, _ = _run(capsys, "verify", "--n-from", "3", "--n-to", "12", "--suite", "all")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "pass" and obj["counts"]["fail"] == 0
    keys = [(c["n"], c["name"]) for c in obj["checks"]]
    assert keys == sorted(keys)
    assert {c["status"] for c in obj["checks"]} <= {"pass", "skipped"}


def test_verify_formats(capsys):
    code, out, _ = _run(capsys, "verify", "--n-from", "5", "--n-to", "6", "--suite", "tridiag", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["n", "name", "anchor", "status", "detail"] and len(rows) == 4
    code, out, _ = _run(capsys, "verify", "--n-from", "5", "--n-to", "5", "--suite", "odd", "--format", "text")
    assert code == 0 and out.strip().splitlines()[-1].startswith("overall: pass")


def test_verify_failure_exit_code(capsys, monkeypatch):
    def failing(n):
        return [cli.Record(n, "forced", "none", "fail", "")]

    monkeypatch.setitem(cli.SUITES, "tridiag", failing)
    code, out, _ = _run(capsys, "verify", "--n-from", "3", "--n-to", "3", "--suite", "tridiag")
    assert code == 1 and json.loads(out)["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["krawtchouk", "--n", "4"],
    ["spectrum", "--n", "4", "--k", "2", "--subspace", "x"],
    ["equation", "--n", "6"],
    ["equation", "--n", "5", "--component", "B"],
    ["dims", "--n", "12"],
    ["dims", "--n", "5", "--gx", "3"],
    ["tridiag", "--n", "6"],
    ["verify", "--n-from", "5", "--n-to", "3"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.run(argv))
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_byte_identical_output():
    argv = [sys.executable, "-m", "splitcorr", "covering", "--n", "5", "--branches", "10", "--seed", "3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
