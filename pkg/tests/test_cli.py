import json
import subprocess
import sys

import pytest

from jgpi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def lines(text):
    return [json.loads(l) for l in text.splitlines() if l.strip()]


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "(y1,z1,z2)")
    data = json.loads(out)
    assert code == 0 and data["expression"] == "(y1,z1,z2)"
    assert data["multidegrees"] == ["y1*z1*z2"]
    assert run(capsys, "check", "y1")[0] == 1


def test_check_identity_in_bn(capsys):
    code, out, _ = run(capsys, "check", "(y1,x1,x2)", "--model", "bn-scalar", "--n", "3")
    assert code == 0 and json.loads(out)["identity"] is True
    assert json.loads(out)["instances"] == 4


def test_check_non_identity_gives_witness(capsys):
    code, out, _ = run(capsys, "check", "(y1,z1,z2)", "--model", "j2-nonscalar")
    data = json.loads(out)
    assert code == 1 and data["identity"] is False and data["witness"]


def test_check_symbolic_gram(capsys):
    code, _, _ = run(capsys, "check", "(y1,x1,x2)", "--model", "bn-scalar", "--n", "2", "--gram", "symbolic")
    assert code == 0


def test_check_gram_file(capsys, tmp_path):
    f = tmp_path / "gram.json"
    f.write_text(json.dumps({"n": 2, "entries": [["1", "0"], ["0", "-1"]]}))
    code, _, _ = run(capsys, "check", "z1*(z3*z2) - z2*(z3*z1)", "--model", "bn-weak", "--n", "2", "--gram", str(f))
    assert code == 1
    code, _, err = run(capsys, "check", "z1", "--model", "bn-scalar", "--n", "2", "--gram", str(tmp_path / "no"))
    assert code == 2 and "not found" in err


def test_check_weak(capsys):
    assert run(capsys, "check", "(x1*x2,x3,x4)", "--model", "bn-weak", "--n", "2")[0] == 0
    assert run(capsys, "check", "y1*z1", "--model", "bn-weak", "--n", "2")[0] == 2


@pytest.mark.parametrize("argv", [["check", ""], ["check", "(y1,z1"], ["tableau", "standard"],
                                  ["gn"], ["no-such-command"], ["member", "(y1,x1,x2)", "--gens", "scalar-bn"],
                                  ["tableau", "phi", "(1 0|2 3)"], ["check", "y1", "--model", "nope"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_member(capsys):
    code, out, _ = run(capsys, "member", "(y1,y2,y3)")
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "member", "(y1,z1,z2)")
    assert code == 1
    code, out, _ = run(capsys, "member", "(y1,x1,x2)", "--gens", "scalar-b")
    data = json.loads(out)
    assert code == 0 and len(data["instances"]) == 4


def test_compare_equal(capsys):
    code, out, _ = run(capsys, "compare", "--gens", "nonscalar-j2", "--model", "j2-nonscalar", "--max-deg", "3")
    reports = lines(out)
    assert code == 0 and reports and all(r["equal"] for r in reports)


def test_compare_finds_g2(capsys):
    code, out, _ = run(capsys, "compare", "--gens", "scalar-b", "--model", "bn-scalar", "--n", "2",
                       "--min-deg", "5", "--max-deg", "5")
    reports = lines(out)
    assert code == 1
    bad = [r for r in reports if not r["equal"]]
    assert bad and all(r["counterexample"] for r in bad)


def test_compare_with_bn_generators(capsys):
    code, _, _ = run(capsys, "compare", "--gens", "scalar-bn", "--model", "bn-scalar", "--n", "2",
                     "--min-deg", "5", "--max-deg", "5", "--max-odd", "5")
    assert code == 0


def test_compare_degree_cap(capsys, monkeypatch):
    monkeypatch.setenv("JGPI_MAX_DEG", "6")
    code, _, err = run(capsys, "compare", "--max-deg", "9")
    assert code == 2 and "cap" in err


def test_compare_out_file(capsys, tmp_path):
    out = tmp_path / "cmp.jsonl"
    code, stdout, _ = run(capsys, "compare", "--max-deg", "2", "--out", str(out))
    assert code == 0 and stdout == ""
    assert all("equal" in r for r in lines(out.read_text()))


def test_compare_parallel_matches_serial(capsys):
    _, a, _ = run(capsys, "compare", "--max-deg", "3")
    _, b, _ = run(capsys, "compare", "--max-deg", "3", "--jobs", "2")
    assert lines(a) == lines(b)


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "(z1*z2)*y1 + (y1,z1,z2)")
    data = json.loads(out)
    assert code == 0 and data[0]["degree"] == "y1*z1*z2"
    assert all("element" in t for t in data[0]["terms"])


def test_tableau_standard(capsys):
    assert run(capsys, "tableau", "standard", "(1|4) (2|3)")[0] == 1
    assert run(capsys, "tableau", "standard", "(1 2|1 3)")[0] == 0


def test_tableau_phi(capsys):
    code, out, _ = run(capsys, "tableau", "phi", "(1 1|2 3)")
    assert code == 0 and json.loads(out)["n"] == 4


def test_tableau_straighten(capsys, tmp_path):
    code, out, _ = run(capsys, "tableau", "straighten", "(1|4) (2|3)", "--n", "4")
    data = json.loads(out)
    assert code == 0 and data["residual"] == "0" and len(data["terms"]) == 2
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"pairs": [[2, 1]]}))
    code, out, _ = run(capsys, "tableau", "straighten", str(f), "--n", "1")
    assert code == 0 and json.loads(out)["terms"][0]["coeff"] == "1"


def test_tableau_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO('{"zero": false, "rows": [{"p": [1, 2], "q": [2, 1]}]}'))
    code, out, _ = run(capsys, "tableau", "straighten", "-", "--n", "2")
    assert code == 0 and json.loads(out)["terms"][0]["coeff"] == "-1"


def test_basis_cert(capsys):
    code, out, _ = run(capsys, "tableau", "basis-cert", "--content", "1 1 2 3", "--n", "2")
    data = json.loads(out)
    assert code == 0 and data["independent"] and data["spans"]
    assert run(capsys, "tableau", "basis-cert", "--content", "1 2 3", "--zero", "--n", "2")[0] == 0
    assert run(capsys, "tableau", "basis-cert")[0] == 2


def test_gn(capsys):
    code, out, _ = run(capsys, "gn", "--n", "2", "--verify")
    data = json.loads(out)
    assert code == 0 and data["terms"] == 6 and data["identity_in_Bn"] and data["witness_in_Bn+1"]
    code, out, _ = run(capsys, "gn", "--n", "1", "--weak")
    assert code == 0 and "x1" in json.loads(out)["poly"]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jgpi.cli", "member", "(y1,y2,y3)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["member"] is True
