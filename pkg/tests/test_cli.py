import json
import shlex
from fractions import Fraction
from pathlib import Path

import pytest

from valtop.cli import COMMANDS, Report, _decimal, main, run
from valtop.errors import BudgetExceeded, PreconditionError
from valtop.problem import parse

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def corpus_invocations():
    lines = (PROBLEMS / "commands.txt").read_text().splitlines()
    out = []
    for line in lines:
        if line.strip() and not line.startswith("#"):
            *args, name = shlex.split(line)
            out.append(args + [str(PROBLEMS / name)])
    return out


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def plane(tmp_path):
    path = tmp_path / "problem.vt"
    path.write_text("vars x y\nideal I = x^2, y^3\nvaluation v = 1, 2\nvaluation w = 1, 1\n")
    return str(path)


@pytest.fixture
def space(tmp_path):
    path = tmp_path / "space.vt"
    path.write_text("vars x y z; valuation v = 2, 3, 7; ideal T = x*y, x*z, y*z;")
    return str(path)


def test_reduced_order_report(capsys, plane):
    code, out, _ = invoke(capsys, "reduced-order", "-f", "xy", "-I", "I", plane)
    assert code == 0
    assert "reduced_order = 5/6" in out
    assert "(3,2)/6" in out
    assert "max-degree=12 max-power=8 max-dim=4" in out


def test_lin_equiv_report(capsys, space, tmp_path):
    out_json = tmp_path / "r.json"
    code, out, _ = invoke(capsys, "lin-equiv", "-v", "v", "--json", str(out_json), space)
    assert code == 0 and "r = 4" in out
    rep = json.loads(out_json.read_text())
    assert rep["result"]["r"] == 4
    assert rep["witnesses"]["r'=3"] == {"level": 7, "monomial": "z^6"}


def test_growth_csv(capsys, plane, tmp_path):
    csv = tmp_path / "out.csv"
    code, _, _ = invoke(capsys, "growth", "-v", "v", "--lmax", "10", "--csv", str(csv), plane)
    rows = csv.read_text().splitlines()
    assert code == 0
    assert rows[0] == "l,F" and rows[1] == "0,1" and len(rows) == 12


def test_csv_rejected_for_non_table(capsys, plane, tmp_path):
    code, _, err = invoke(capsys, "rees", "-I", "I", "--csv", str(tmp_path / "x.csv"), plane)
    assert code == 3 and "CSV" in err


def test_json_schema(capsys, plane):
    code, out, _ = invoke(capsys, "reduced-order", "-f", "xy", "-I", "I", "--json", "-", plane)
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == 1
    assert {"command", "operation", "inputs", "result", "witnesses", "predictor",
            "budgets", "timing"} <= set(rep)
    assert rep["result"]["reduced_order"] == "5/6"
    assert rep["budgets"] == {"max_degree": 12, "max_power": 8, "max_dim": 4, "threads": 1}


def test_decimal_is_marked(capsys, plane):
    code, out, _ = invoke(capsys, "reduced-order", "-f", "xy", "-I", "I", "--decimal", "4", plane)
    assert "not exact" in out and "reduced_order ~ 0.8333" in out
    assert "reduced_order = 5/6" in out
    code, out, _ = invoke(capsys, "reduced-order", "-f", "xy", "-I", "I", "--decimal", "3",
                          "--json", "-", plane)
    rep = json.loads(out)
    assert rep["approximate"] == {"digits": 3, "values": {"reduced_order": "0.833"}}
    assert rep["result"]["reduced_order"] == "5/6"


@pytest.mark.parametrize("q, k, s", [
    (Fraction(5, 6), 4, "0.8333"), (Fraction(2, 3), 0, "1"), (Fraction(-1, 8), 2, "-0.13"),
    (Fraction(1, 1000), 2, "0.00"), (Fraction(7, 2), 1, "3.5"),
])
def test_decimal_rounding(q, k, s):
    assert _decimal(q, k) == s


@pytest.mark.parametrize("argv, code", [
    (["symbolic", "-I", "T", "-n", "9"], 4),
    (["symbolic", "-I", "T", "-n", "3", "--max-power", "2"], 4),
    (["rees-constant", "-I", "m", "--bound", "13"], 4),
    (["symbolic", "-I", "T"], 3),
    (["symbolic", "-I", "nope", "-n", "2"], 3),
    (["nu-value", "-f", "x", "-v", "nope"], 3),
    (["rees", "-I", "T"], 3),
    (["nu-value", "-f", "x^-2", "-v", "v"], 2),
    (["nu-value", "-f", "q", "-v", "v"], 2),
    (["izumi", "-v", "v", "-w", "v"], 0),
])
def test_exit_codes(capsys, space, argv, code):
    got, out, err = invoke(capsys, *argv, space)
    assert got == code
    assert bool(err) == (code != 0)


def test_unsupported_dimension_is_budget(capsys, tmp_path):
    path = tmp_path / "five.vt"
    path.write_text("vars a b c d e; ideal m5 = a, b, c, d, e")
    assert invoke(capsys, "rees", "-I", "m5", str(path))[0] == 4
    assert invoke(capsys, "rees", "-I", "m5", "--max-dim", "3", str(path))[0] == 4


def test_parse_error_exit(capsys, tmp_path):
    path = tmp_path / "bad.vt"
    path.write_text("vars x y\nideal I = x^-1\n")
    code, _, err = invoke(capsys, "rees", "-I", "I", str(path))
    assert code == 2 and "2:13: negative exponent" in err


def test_missing_file(capsys, tmp_path):
    assert invoke(capsys, "rees", "-I", "I", str(tmp_path / "none.vt"))[0] == 3


def test_threads_env(capsys, plane, monkeypatch):
    monkeypatch.setenv("VALTOP_THREADS", "3")
    code, out, _ = invoke(capsys, "invariants", "-v", "v", "--json", "-", plane)
    assert json.loads(out)["budgets"]["threads"] == 3
    monkeypatch.setenv("VALTOP_THREADS", "many")
    assert invoke(capsys, "invariants", "-v", "v", plane)[0] == 3


def test_run_direct():
    problem = parse("vars x y; ideal I = x^2, y^3;")
    rep = run("rees", {"ideal": "I"}, problem)
    assert isinstance(rep, Report)
    assert rep.result["valuations"] == ["(3,2)/6"]
    with pytest.raises(PreconditionError):
        run("frobnicate", {}, problem)
    with pytest.raises(BudgetExceeded):
        run("rees", {"ideal": "I", "bound": 20}, problem)


def test_every_command_in_corpus():
    used = {inv[0] for inv in corpus_invocations()}
    assert used == set(COMMANDS)


@pytest.mark.parametrize("argv", corpus_invocations(), ids=lambda a: " ".join(a[:-1]))
def test_corpus_runs(capsys, argv):
    code, out, err = invoke(capsys, *argv, "--json", "-")
    assert code == 0, err
    rep = json.loads(out)
    assert rep["command"] == argv[0]
    assert rep["budgets"]["max_degree"] == 12
