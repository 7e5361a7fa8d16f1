import json
import subprocess
import sys

import pytest

from pretzel_delta import formulas
from pretzel_delta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_a2_all(capsys):
    code, out, _ = run(capsys, "a2", "2,3,3", "--method", "all")
    assert code == 0
    assert "= -1" in out and "agree" in out


def test_delta_exact(capsys):
    code, out, _ = run(capsys, "--json", "delta", "3,5,7")
    data = json.loads(out)
    assert code == 0 and data["value"] == 18 and data["kind"] == "exact"


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "-1,3,3", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["certificate"]["total"] == 1
    assert data["verification"]["ok"] is True


def test_verify_file(capsys, tmp_path):
    _, out, _ = run(capsys, "certify", "-1,5,3,3,3", "--json")
    path = tmp_path / "cert.json"
    path.write_text(out)
    assert run(capsys, "verify", str(path))[0] == 0
    data = json.loads(out)
    data["certificate"]["total"] += 2
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 2 and "FAIL" in out


def test_torus(capsys):
    code, out, _ = run(capsys, "torus", "3", "4", "--json")
    assert code == 0 and json.loads(out)["uDelta"] == 5
    code, out, err = run(capsys, "torus", "2", "4")
    assert code == 1 and out == "" and "gcd" in err


@pytest.mark.parametrize("argv", [
    ("a2", "3,3"),
    ("delta", "2,4,3"),
    ("a2", "3,x"),
    ("certify", "1,3,3"),
    ("a2", "7,7,7", "--method", "alexander"),
    ("torus", "2,3"),
    ("table", "--file", "/nonexistent.csv"),
])
def test_invalid_input_exits_1_without_output(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 1
    assert out == ""


def test_mismatch_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(formulas, "a2_formula", lambda v: 99)
    code, out, err = run(capsys, "a2", "3,5,7")
    assert code == 2 and out == "" and "99" in err


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--odd-n", "3", "--max", "3", "--jobs", "1")
    assert code == 0 and "0 disagree" in out
    code, out, _ = run(capsys, "--json", "crosscheck", "--odd-n", "3", "--max", "0")
    assert code == 0 and json.loads(out)["summary"]["vectors"] == 0


def test_table_ok_and_tampered(capsys, tmp_path):
    code, out, _ = run(capsys, "table")
    assert code == 0 and "10_76" in out and "MISMATCH" not in out
    bad = tmp_path / "bad.csv"
    bad.write_text("name,twists,a2,u_delta\n8_5,2;3;3,7,3\n")
    code, out, _ = run(capsys, "table", "--file", str(bad))
    assert code == 2 and "MISMATCH" in out
    broken = tmp_path / "broken.csv"
    broken.write_text("name,twists,a2,u_delta\n8_5,2;3\n")
    code, out, err = run(capsys, "table", "--file", str(broken))
    assert code == 1 and "line 2" in err


def test_lkcheck(capsys):
    code, out, _ = run(capsys, "lkcheck", "--n", "3", "--max", "3")
    assert code == 0 and "0 mismatches" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "--json", "classify", "3,3")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "link" and data["tracedComponents"] == 2


def test_json_is_deterministic():
    cmd = [sys.executable, "-m", "pretzel_delta", "--json", "crosscheck", "--odd-n", "3",
           "--even-n", "2", "--max", "3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd + ["--jobs", "1"], capture_output=True, check=True).stdout
    assert first == second
