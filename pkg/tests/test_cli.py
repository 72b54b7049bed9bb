import json

import pytest

from akashi.cli import main


@pytest.fixture
def run(tmp_path, capsys):
    def _run(args, payload=None):
        argv = list(args)
        if payload is not None:
            path = tmp_path / "in.json"
            path.write_text(json.dumps(payload))
            argv.append(str(path))
        code = main(argv)
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def test_wprep(run):
    code, out, _ = run(["wprep"], {"p": 5, "N": 3, "D": 6, "coeffs": [-5, -4, 1]})
    assert code == 0
    data = json.loads(out)
    assert (data["mu"], data["lambda"]) == (0, 1)
    assert data["distinguished"] == ["120", "1"]


def test_wprep_zero_is_precision_error(run):
    code, _, err = run(["wprep"], {"p": 3, "N": 2, "D": 2, "coeffs": [9, 0]})
    assert code == 2
    assert "precision" in err


def test_char_of_finite_form(run):
    code, out, _ = run(["char"], {"form": "finite", "p": 2, "N": 2, "orders": [1, 1], "theta": [[0, 1], [0, 0]]})
    assert code == 0
    assert json.loads(out)["poly"] == "1"


def test_akashi(run):
    payload = {"p": 3, "N": 2, "D": 3, "P": [[]], "k": 1, "actions": [[[[1, 1]]]]}
    code, out, _ = run(["akashi"], payload)
    assert code == 0
    assert json.loads(out)["akashi"]["poly"] == "T"


def test_missing_assumption_is_certificate_error(run):
    payload = {"f_cyc": {"p": 5, "N": 3}, "R_places": [{"u": 6, "c": 0}]}
    code, _, err = run(["assemble-gl2"], payload)
    assert code == 3
    assert "--assume" in err


def test_gl2_report(run):
    payload = {"f_cyc": {"p": 5, "N": 3}, "R_places": [{"u": 6, "c": 0}]}
    code, out, _ = run(["assemble-gl2", "--assume", "MH-sigma", "--assume", "no-cm", "--report"], payload)
    assert code == 0
    assert "T - 5" in out or "T + 120" in out
    assert "assumed: MH-sigma, no-cm" in out


def test_euler_for_curve(run):
    code, out, _ = run(["--prime", "5", "euler", "--curve", '{"a": [0, 0, 0, 0, 1]}', "--ell", "7", "--ell", "11"])
    assert code == 0
    assert [r["points"] for r in json.loads(out)] == [12, 12]


def test_euler_char(run):
    payload = {"M_places": [{"ell": 11, "reduction": "split_mult"}], "R_places": [{"u": 6, "c": 0}]}
    code, out, _ = run(["--prime", "5", "--p-prec", "4", "euler-char"], payload)
    assert code == 0
    assert json.loads(out)["total"] == 2


def test_usage_error_exit_code(run):
    assert run(["induce"])[0] == 1
    assert run(["no-such-command"])[0] == 1
    assert run(["--help"])[0] == 0


def test_output_is_deterministic(run, tmp_path):
    payload = {"p": 2, "N": 2, "D": 3, "P": [[[0, 0, 1]]], "actions": [[[[1]]], [[[1]]]]}
    first = run(["akashi", "--truncated"], payload)
    second = run(["akashi", "--truncated"], payload)
    assert first == second and first[0] == 0


def test_oracle_fuzz_command(run):
    code, out, _ = run(["oracle-fuzz", "--seed", "9", "--count", "10"])
    assert code == 0
    data = json.loads(out)
    assert data["seed"] == 9 and data["failures"] == []
