import json
import subprocess
import sys

import pytest

from replab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_text_and_json_agree(capsys):
    expr = "wedge(2, wedge(3, H))"
    code, text, _ = run(capsys, "decompose", "--group", "sp", "--rank", "6", "--check-dims", expr)
    assert code == 0
    assert text.splitlines()[0] == "V_{0}^2 + V_{1^2}^3 + V_{1^4}^2 + V_{1^6} + V_{2,1^2} + V_{2^2} + V_{2^2,1^2}"
    code, js, _ = run(capsys, "decompose", "--group", "sp", "--rank", "6", "--check-dims", "--json", expr)
    obj = json.loads(js)
    assert obj["schema"] == "replab/1"
    assert obj["dims_agree"] is True
    assert f"dimension {obj['total_dim']}" in text
    terms = {tuple(t["partition"]): t["mult"] for t in obj["terms"]}
    assert terms == {(): 2, (1, 1): 3, (1, 1, 1, 1): 2, (1,) * 6: 1, (2, 1, 1): 1, (2, 2): 1, (2, 2, 1, 1): 1}


def test_syntax_error_exit_code(capsys):
    code, _, err = run(capsys, "decompose", "--rank", "3", "wedge(2 H)")
    assert code == 2
    assert "byte 8" in err and "','" in err


def test_quotient_needs_sp(capsys):
    code, _, err = run(capsys, "decompose", "--group", "sl", "--rank", "4", "quot(wedge(3,H), H-in-wedge3)")
    assert code == 2


def test_dim_and_hom(capsys):
    assert run(capsys, "dim", "--group", "sl", "--rank", "4", "lie(4)")[1].strip() == "60"
    code, out, _ = run(capsys, "hom", "--rank", "6", "wedge(2, quot(wedge(3,H), H-in-wedge3))", "V[0]")
    assert (code, out.strip()) == (0, "1")


def test_branch(capsys):
    code, out, _ = run(capsys, "branch", "--rank", "4", "--json", "V[1]")
    obj = json.loads(out)
    assert {tuple(t["partition"]): t["mult"] for t in obj["terms"]} == {(): 2, (1,): 1}
    assert run(capsys, "branch", "--rank", "4", "H")[0] == 2


def test_johnson_spans(capsys):
    code, out, _ = run(capsys, "johnson", "tau1-span", "--g", "3")
    assert code == 0 and json.loads(out)["span_dim"] == 20
    assert run(capsys, "johnson", "tau1-span", "--g", "2")[0] == 2
    assert run(capsys, "johnson", "tau2-span")[0] == 2


def test_johnson_bracket_check(capsys):
    code, out, _ = run(capsys, "johnson", "bracket-check", "--seed", "1", "--count", "20", "--json")
    assert code == 0 and json.loads(out)["failures"] == 0


def test_cup_image(capsys):
    code, out, _ = run(capsys, "johnson", "cup-image", "--g", "6", "--case", "closed")
    assert out.strip() == "V_{1^2} + V_{1^4} + V_{1^6} + V_{2^2,1^2}"


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--which", "1", "--g", "6")
    assert (code, out.strip()) == (0, "-3*a1^a2^a3^a4")


def test_mm_table(capsys):
    code, out, _ = run(capsys, "mm", "table", "--g", "12", "--dmax", "6", "--json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["sum"] for r in rows] == [r["kawazumi"] for r in rows] == [0, 3, 0, 20, 0, 190]


def test_paper_suite_subset(capsys):
    code, out, _ = run(capsys, "paper-suite", "--only", "2", "8")
    assert code == 0
    assert "2/2 criteria passed" in out
    assert run(capsys, "paper-suite", "--only", "11")[0] == 2


def test_bad_thread_setting(capsys, monkeypatch):
    monkeypatch.setenv("REPLAB_THREADS", "two")
    assert run(capsys, "dim", "--rank", "3", "H")[0] == 2


def test_argparse_usage_error_and_module_entry():
    res = subprocess.run([sys.executable, "-m", "replab", "decompose"], capture_output=True, text=True)
    assert res.returncode == 2
    res = subprocess.run([sys.executable, "-m", "replab", "dim", "--rank", "3", "wedge(2,H)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "15"
