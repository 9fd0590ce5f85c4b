import json
import subprocess
import sys

import pytest

from galoisdct import codegen
from galoisdct.cli import main
from galoisdct.planner import plan_dct4_poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def plan_file(tmp_path, capsys):
    def make(transform, n, *extra):
        path = tmp_path / f"{transform}_{n}.json"
        code, _, _ = run(capsys, "plan", "--transform", transform, "--n", str(n), "--out",
                         str(path), *extra)
        assert code == 0
        return str(path)
    return make


def test_plan_stdout(capsys):
    code, out, _ = run(capsys, "plan", "--transform", "dct4-poly", "--n", "1")
    assert code == 0
    assert json.loads(out)["stages"] == [{"kind": "identity"}]


def test_plan_skew(capsys):
    code, out, _ = run(capsys, "plan", "--transform", "dct4-poly", "--n", "4", "--skew", "3/2^3")
    assert code == 0 and json.loads(out)["skew"] == "3/8"


@pytest.mark.parametrize("argv", [
    ["plan", "--transform", "dct4", "--n", "6"],
    ["plan", "--transform", "dct5", "--n", "4"],
    ["plan", "--transform", "dct4-poly", "--n", "4", "--skew", "0.25"],
    ["plan", "--transform", "dct2", "--n", "4", "--skew", "1/4"],
    ["plan", "--transform", "dct4", "--n", "four"],
    ["bogus"],
    [],
    ["factor", "--k", "-1"],
    ["galois", "--k", "0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:") and out == ""


def test_missing_and_malformed_plan(capsys, tmp_path):
    code, _, err = run(capsys, "count", "--plan", str(tmp_path / "nope.json"))
    assert code == 1 and "cannot read plan" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", "--plan", str(bad))
    assert code == 1 and "malformed" in err


def test_verify_pass(capsys, plan_file):
    path = plan_file("dct4", 16)
    code, out, _ = run(capsys, "verify", "--plan", path)
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--plan", plan_file("dct2-poly", 16), "--exact", "--json")
    assert code == 0 and json.loads(out)["exact_equal"] is True


def test_verify_mismatch_exit_code(capsys, tmp_path):
    d = codegen.plan_to_dict(plan_dct4_poly(4))
    d["stages"][-1]["indices"] = [0, 1, 2, 3]  # wrong output order
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", "--plan", str(path), "--exact")
    assert code == 2 and "first mismatch: row 1" in out
    code, out, _ = run(capsys, "verify", "--plan", str(path))
    assert code == 2 and "FAIL" in out


def test_count(capsys, plan_file):
    code, out, _ = run(capsys, "count", "--plan", plan_file("dct2-poly", 8))
    assert code == 0
    assert "mults: 5" in out.splitlines()
    assert "expected mults: 5" in out
    code, out, _ = run(capsys, "count", "--plan", plan_file("dct4-poly", 8))
    assert "mults: 12" in out.splitlines() and "adds: 36" in out.splitlines()


def test_apply_zero_and_exact(capsys, plan_file, tmp_path):
    path = plan_file("dct4-poly", 4)
    vec = _write(tmp_path, "# zeros\n0\n0\n\n0\n0  # last\n")
    code, out, _ = run(capsys, "apply", "--plan", path, "--input", str(vec))
    assert code == 0 and [float(v) for v in out.split()] == [0.0] * 4
    two = plan_file("dct4-poly", 2)
    code, out, _ = run(capsys, "apply", "--plan", two, "--input", str(_write(tmp_path, "1\n0\n")),
                       "--exact")
    assert code == 0 and out.split() == ["1", "1"]
    # second column of [[1, √2-1], [1, -√2-1]] scaled by 1/2
    code, out, _ = run(capsys, "apply", "--plan", two, "--input",
                       str(_write(tmp_path, "0\n1/2\n")), "--exact")
    assert out.splitlines() == ["-1/2 + √2/2", "-1/2 - √2/2"]


def _write(tmp_path, text):
    p = tmp_path / "vec.txt"
    p.write_text(text)
    return p


def test_apply_errors(capsys, plan_file, tmp_path):
    path = plan_file("dct2", 4)
    code, _, err = run(capsys, "apply", "--plan", path, "--input", str(_write(tmp_path, "1\n2\n")))
    assert code == 1 and "expects 4" in err
    code, _, err = run(capsys, "apply", "--plan", path, "--input",
                       str(_write(tmp_path, "1\nabc\n1\n1\n")))
    assert code == 1 and ":2:" in err


def test_factor_k2(capsys):
    code, out, _ = run(capsys, "factor", "--k", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[1].endswith("(2T_2(x) - √2)(2T_2(x) + √2)")
    assert lines[2].count("2T_1(x)") == 4


def test_factor_expand_and_skew(capsys):
    code, out, _ = run(capsys, "factor", "--k", "1", "--skew", "1/4", "--expand")
    assert code == 0 and "2T_2(x) - √2" in out and " = " in out


def test_galois(capsys):
    code, out, _ = run(capsys, "galois", "--k", "2")
    assert code == 0
    assert "σ1  | σ1  σ3  σ0  σ2" in out
    assert "fixed field" in out


def test_emit(capsys, plan_file, tmp_path):
    path = plan_file("dct4", 1)
    code, out, _ = run(capsys, "emit", "--plan", path, "--format", "kernel")
    assert code == 0 and "y0 = c0 * x0" in out
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "emit", "--plan", plan_file("dct4-poly", 8), "--format", "graph",
                       "--out", str(dot))
    assert code == 0 and out == "" and dot.read_text().count('class="mul"') == 12


@pytest.mark.parametrize("argv", [
    ["factor", "--k", "3"],
    ["galois", "--k", "3"],
    ["plan", "--transform", "dct2", "--n", "16"],
])
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "galoisdct", "factor", "--k", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "√2" in res.stdout
    res = subprocess.run([sys.executable, "-m", "galoisdct", "count", "--plan",
                          str(tmp_path / "missing.json")], capture_output=True, text=True,
                         check=False)
    assert res.returncode == 1 and res.stderr
