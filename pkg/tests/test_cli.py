import json
from pathlib import Path

import pytest

from bpqtools.cli import main, parse_rational

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_hj_commands(capsys):
    code, rep = run_json(capsys, "hj", "expand", "25/9")
    assert code == 0 and rep["outputs"]["coeffs"] == [3, 5, 2]
    assert set(rep) == {"command", "inputs", "outputs", "checks", "version"}
    code, rep = run_json(capsys, "hj", "wahl", "5", "2")
    assert rep["outputs"]["wahl"] == [3, 5, 2] and rep["outputs"]["dual"] == [2, 3, 2, 2, 3]
    code, rep = run_json(capsys, "hj", "evaluate", "3,2,1,3,2")
    assert rep["outputs"]["zero_cf"] is True
    code, rep = run_json(capsys, "hj", "matrix", "5/2")
    assert rep["outputs"]["product"] == [[5, -3], [2, -1]]


def test_usage_errors(capsys):
    assert run(capsys, "hj", "expand", "9/0")[0] == 2
    assert run(capsys, "hj", "expand", "6/4")[0] == 2
    assert run(capsys, "classify", "4", "2")[0] == 2
    assert run(capsys, "verify", "--max-p", "501")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "nonsqueeze", "5", "2", "--alpha", "x", "--lambda", "1")[0] == 2


def test_parse_rational():
    assert parse_rational("3/6") == parse_rational("1/2")
    with pytest.raises(Exception):
        parse_rational("inf")


def test_verify_pair(capsys):
    code, rep = run_json(capsys, "verify", "--only", "regulation", "--pair", "4", "1")
    assert code == 0
    trace = rep["outputs"]["contraction_trace"]
    assert [s["chain"] for s in trace] == [[-2, -2, -1, -3], [-2, -1, -2], [-1, -1], [0]]


def test_verify_empty_range(capsys):
    code, out, err = run(capsys, "verify", "--max-p", "1", "--only", "hj")
    assert code == 0 and "empty" in err


def test_verify_small(capsys):
    code, rep = run_json(capsys, "verify", "--max-p", "8")
    assert code == 0 and rep["outputs"]["failed"] == 0


def test_verify_worker_pool(capsys, monkeypatch):
    monkeypatch.setenv("BPQ_WORKERS", "2")
    code, rep = run_json(capsys, "verify", "--max-p", "7", "--only", "hj,atf")
    monkeypatch.setenv("BPQ_WORKERS", "1")
    code1, rep1 = run_json(capsys, "verify", "--max-p", "7", "--only", "hj,atf")
    assert code == code1 == 0 and rep == rep1


def test_diagram_golden(capsys, tmp_path):
    out = tmp_path / "out.svg"
    code, _, _ = run(capsys, "diagram", "pin-ellipsoid", "5", "2", "--alpha", "1", "--beta", "1", "-o", str(out))
    assert code == 0 and out.read_text() == (GOLDEN / "pin_ellipsoid_5_2.svg").read_text()
    assert json.loads(out.with_suffix(".json").read_text())["edges"]
    code, rep = run_json(capsys, "diagram", "compactify", "5", "2")
    assert code == 0 and rep["outputs"]["svg_text"] == (GOLDEN / "compactify_5_2.svg").read_text()
    for label in ("D0", "D1", "D4"):
        assert f">{label}<" in rep["outputs"]["svg_text"]
    code, rep = run_json(capsys, "diagram", "pin-ellipsoid", "2", "1", "--alpha", "inf")
    assert code == 0 and rep["outputs"]["diagram"]["edges"][0]["length"] == "inf"


def test_determinism(capsys):
    a = run(capsys, "diagram", "compactify", "7", "3", "--json")[1]
    b = run(capsys, "diagram", "compactify", "7", "3", "--json")[1]
    assert a == b


def test_nonsqueeze_and_classify(capsys):
    code, rep = run_json(capsys, "nonsqueeze", "5", "2", "--alpha", "2", "--lambda", "1")
    assert rep["outputs"]["verdict"] == "obstructed"
    code, rep = run_json(capsys, "nonsqueeze", "5", "2", "--alpha", "1/2", "--lambda", "1")
    assert rep["outputs"]["verdict"] == "embeddable-allowed"
    code, rep = run_json(capsys, "classify", "5", "2")
    assert rep["outputs"]["admissible"] == [[5, 2], [5, 3]]
    code, rep = run_json(capsys, "classify", "2", "1")
    assert rep["outputs"]["admissible"] == [[2, 1]]


def test_verify_local(capsys):
    code, rep = run_json(capsys, "verify-local", "--symbolic")
    assert code == 0 and rep["outputs"]["symbolic"]["lagrangian"] == "0"
