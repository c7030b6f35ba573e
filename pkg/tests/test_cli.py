import json
import subprocess
import sys

import pytest

from gramfaces.cli import main, parse_range, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3..6") == [3, 4, 5, 6]
    assert parse_range("2,4..5,2") == [2, 4, 5]
    for bad in ("6..3", "x", "1..", "0"):
        with pytest.raises(UsageError):
            parse_range(bad, 1, 9)


def test_mtable_reference_block_n3(capsys):
    code, out, err = run(capsys, "mtable", "--n", "3", "--d", "2..9", "--k", "1..9", "--check-paper")
    assert code == 0 and "all computed cells match" in err
    assert "| 9 | - | 27 | 30 | 31 | 31 | 32 | 33 | 31 |" in out


def test_mtable_first_row(capsys):
    code, out, _ = run(capsys, "mtable", "--n", "3..6", "--d", "2", "--k", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["3,2,1,3", "4,2,1,4", "5,2,1,5", "6,2,1,6"]


def test_mtable_zero_codim(capsys):
    code, out, _ = run(capsys, "mtable", "--n", "2", "--d", "2", "--k", "0", "--format", "records")
    assert code == 0
    assert json.loads(out) == {"d": 2, "k": 0, "m": "0", "n": 2}


def test_mtable_incomplete_budget(capsys):
    code, out, err = run(capsys, "mtable", "--n", "6", "--d", "4", "--k", "1..9", "--budget", "0")
    assert code == 2 and "?" in out and "incomplete" in err


def test_mtable_usage_errors(capsys):
    assert run(capsys, "mtable", "--n", "0", "--d", "2", "--k", "1")[0] == 1
    assert run(capsys, "mtable", "--d", "2", "--k", "1")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def test_space_sum_of_two_squares(tmp_path, capsys):
    # (x1^2 + x2^2)^perp in three variables, given by generators
    gens = [{"x1^2": "1", "x2^2": "-1"}, {"x1*x2": "1"}, {"x1*x3": "1"}, {"x2*x3": "1"}, {"x3^2": "1"}]
    f = write(tmp_path, "u.json", {"n": 3, "d": 2, "generators": gens})
    code, out, _ = run(capsys, "space", f, "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["codim"] == 1 and rec["codim_U2"] == 2


@pytest.mark.parametrize("n,d", [(3, 2), (4, 3)])
def test_space_power_complement(tmp_path, capsys, n, d):
    f = write(tmp_path, "u.json", {"n": n, "d": d, "complement_monomials": [f"x1^{d}"]})
    code, out, _ = run(capsys, "space", f)
    assert code == 0
    assert f"codim U^2 = {n}" in out and "HasBasePoints" in out


def test_space_empty_generators(tmp_path, capsys):
    f = write(tmp_path, "u.json", {"n": 2, "d": 2, "generators": []})
    code, out, _ = run(capsys, "space", f)
    assert code == 0 and "dim U = 0" in out and "codim U = 3" in out


def test_space_parse_errors(tmp_path, capsys):
    code, _, err = run(capsys, "space", write(tmp_path, "bad.json", '{"n": 3,\n  "d": }'))
    assert code == 1 and "bad.json:2:" in err
    code, _, err = run(capsys, "space", write(tmp_path, "deg.json", {"n": 2, "d": 2, "generators": [{"x1": "1"}]}))
    assert code == 1 and "degree" in err
    code, _, err = run(capsys, "space", write(tmp_path, "var.json", {"n": 2, "d": 2, "complement_monomials": ["x3^2"]}))
    assert code == 1 and "x3" in err
    assert run(capsys, "space", str(tmp_path / "missing.json"))[0] == 1


def test_macaulay_subcommands(capsys):
    assert run(capsys, "macaulay", "rep", "5", "2")[1].splitlines() == ["3 2", "C(3,2) + C(2,1)"]
    assert run(capsys, "macaulay", "growth", "6", "2")[1].strip() == "10"
    assert run(capsys, "macaulay", "green", "3", "3")[1].strip() == "0"
    assert run(capsys, "macaulay", "shift", "5", "2", "0", "0")[1].strip() == "5"
    assert run(capsys, "macaulay", "shift", "5", "2", "1", "0")[0] == 1


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate-ss", "--n", "3", "--d", "3", "--k", "5", "--codim")
    assert code == 0
    assert "x1^3, x1^2*x2, x1*x2^2, x1^2*x3, x1*x2*x3  codim U^2 = 16" in out
    assert run(capsys, "enumerate-ss", "--n", "2", "--d", "2", "--k", "1", "--count")[1].strip() == "1"
    assert run(capsys, "enumerate-ss", "--n", "2", "--d", "2", "--k", "7")[0] == 1


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "codim1-bp", "--n", "4", "--d", "3", "--trials", "20", "--seed", "7")
    assert code == 0 and "pass 20  fail 0" in out
    code, out, _ = run(capsys, "verify", "deg-reduction", "--n", "3", "--d", "4", "--k", "2", "--trials", "50", "--seed", "1")
    assert code == 0 and "fail 0" in out
    code, out, _ = run(capsys, "verify", "gallery")
    assert code == 0 and "MISMATCH" not in out


def test_verify_unknown_lists_registry(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 1 and "main-bound" in err and "gallery" in err


def test_verify_records_are_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "codim2-bpf", "--trials", "4", "--format", "records")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    assert [json.loads(x)["trial"] for x in lines] == [0, 1, 2, 3]


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--k-max", "2")
    assert code == 0 and out.startswith("k |")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gramfaces.cli", "macaulay", "rep", "7", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "4 3"
