import json
from pathlib import Path

import pytest

from chern.cli import main
from chern.runner import resolve_config, run_text

DEMO = Path(__file__).resolve().parent.parent / "demo"


def test_two_planes_script_end_to_end():
    reports, cfg = run_text((DEMO / "two_planes.chn").read_text(), {"seed": 3})
    coeffs = next(r for r in reports if r.claim == "coeffs")
    assert coeffs.e == (2, -1, 0)
    assert all(r.verdict == "pass" for r in reports)
    assert cfg.seed == 3


def test_config_precedence():
    assert resolve_config({}, {}).seed == 0
    assert resolve_config({}, {"seed": 4}).seed == 4
    assert resolve_config({"seed": 9}, {"seed": 4}).seed == 9
    assert resolve_config({"seed": None}, {"seed": 4}).seed == 4


def test_task_option_overridden_by_flag():
    text = "ring S = char 32003, vars x y; ideal M = x, y; task coeffs S M nmax=12;"
    (r,), _ = run_text(text, {})
    assert r.evidence_dict["nmax"] == 12
    (r,), _ = run_text(text, {"nmax": 14})
    assert r.evidence_dict["nmax"] == 14


def test_run_exit_codes(tmp_path, capsys):
    assert main(["run", str(DEMO / "two_planes.chn")]) == 0
    assert main(["run", str(DEMO / "flipped_flag.chn")]) == 1
    assert main(["run", str(tmp_path / "missing.chn")]) == 2
    bad = tmp_path / "bad.chn"
    bad.write_text("ring S = char 7, vars x y;\nideal I = x y;\n")
    assert main(["run", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.chn:2:13" in err


def test_unstable_exit_code(tmp_path):
    f = tmp_path / "short.chn"
    f.write_text("ring S = char 32003, vars x y; ideal M = x, y; task coeffs S M nmax=2;")
    assert main(["run", str(f)]) == 3


def test_run_writes_reports(tmp_path):
    out, csvp = tmp_path / "r.json", tmp_path / "r.csv"
    assert main(["run", str(DEMO / "two_planes.chn"), "--seed", "5", "--json", str(out), "--csv", str(csvp)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == "1" and doc["seed"] == 5
    assert doc["config"]["seed"] == 5
    assert len(csvp.read_text().splitlines()) == len(doc["runs"]) + 1


def test_env_seed(tmp_path, monkeypatch):
    monkeypatch.setenv("CHERN_SEED", "17")
    out = tmp_path / "r.json"
    main(["run", str(DEMO / "two_planes.chn"), "--json", str(out)])
    assert json.loads(out.read_text())["seed"] == 17
    monkeypatch.setenv("CHERN_SEED", "abc")
    assert main(["run", str(DEMO / "two_planes.chn")]) == 2


def test_oneshot_commands(capsys):
    assert main(["gb", "--vars", "x y", "x^2", "x*y", "y^3 - x"]) == 0
    assert capsys.readouterr().out.splitlines() == ["x*y", "x^2", "y^3 - x"]
    assert main(["length", "--vars", "x y", "x^2", "y^3"]) == 0
    assert "length = 6" in capsys.readouterr().out
    assert main(["dim", "--vars", "x y z", "--rel", "x*z - y^2"]) == 0
    assert "dim = 2" in capsys.readouterr().out
    assert main(["depth", "--vars", "x y", "--rel", "x^2", "--rel", "x*y"]) == 0
    assert "depth = 0" in capsys.readouterr().out
    assert main(["coeffs", "--vars", "x y", "x^2", "x*y", "y^2"]) == 0
    assert "e = (4, 1, 0)" in capsys.readouterr().out
    assert main(["coeffs", "--vars", "x y", "x y"]) == 2
    assert main(["gb", "--vars", "x", "--char", "9", "x"]) == 2


def test_usage_errors():
    assert main([]) == 2
    assert main(["corpus", "--suite", "nope"]) == 2
    assert main(["corpus", "--flip", "nope"]) == 2


def test_every_task_kind_runs():
    from chern.dsl import TASK_SIGNATURES

    reports, _ = run_text((DEMO / "all_tasks.chn").read_text(), {"seed": 1})
    assert {r.claim for r in reports} == set(TASK_SIGNATURES)
    assert all(r.verdict == "pass" for r in reports)
