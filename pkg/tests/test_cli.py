import dataclasses
import json
from fractions import Fraction
from importlib.resources import files

import pytest

from tropopt import cli

DATA = files("tropopt") / "data"
SF = str(DATA / "three_activities_sf.json")
DUE = str(DATA / "three_activities_due.json")
FS = str(DATA / "three_activities_fs.json")


def write(tmp_path, data, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_solve_start_finish():
    code, text = cli.cmd_solve(SF, fmt="json")
    out = json.loads(text)
    assert code == 0
    assert out["makespan"] == "4"
    assert out["box"] == {"lower": ["0", "0", "0"], "upper": ["0", "1", "2"]}
    assert out["generator"]["star"] == [["0", "-1", "-2"], ["0", "0", "-2"], ["0", "-1", "0"]]


def test_solve_due_dates():
    code, text = cli.cmd_solve(DUE, fmt="json")
    out = json.loads(text)
    assert code == 0 and out["makespan"] == "5"
    assert out["schedule"] == {"a1": "3", "a2": "2", "a3": "2"}
    assert out["generator"]["u_low"] == ["3", "2", "1"]
    assert out["generator"]["u_high"] == ["3", "2", "2"]


def test_solve_finish_start():
    code, text = cli.cmd_solve(FS, fmt="json")
    out = json.loads(text)
    assert code == 0 and out["makespan"] == "10"
    assert out["schedule"] == {"a1": "3", "a2": "7", "a3": "11"}
    assert out["schedule_u"] == ["3", "2", "1"]


def test_solve_text():
    code, text = cli.cmd_solve(DUE)
    assert code == 0
    assert "minimum makespan: 5" in text
    assert "(3, 2, 1) <= u <= (3, 2, 2)" in text


def test_float_backend():
    code, text = cli.cmd_solve(FS, fmt="json", backend="float", eps=1e-9)
    assert code == 0 and float(json.loads(text)["makespan"]) == 10


@pytest.mark.parametrize("path", [SF, DUE, FS])
def test_verify_shipped_files(path):
    code, text = cli.cmd_verify(path, samples=10_000, seed=42, fmt="json")
    out = json.loads(text)
    assert code == 0 and out["passed"]
    assert all(r["violation_count"] == 0 for r in out["reports"])
    assert [r["kind"] for r in out["reports"]] == ["sample", "grid"]


def test_verify_rejects_corrupted_makespan():
    def tamper(result):
        return dataclasses.replace(result, makespan=result.makespan + Fraction(1, 2))

    code, text = cli.cmd_verify(DUE, samples=2000, seed=1, tamper=tamper)
    assert code == cli.EXIT_VIOLATION
    assert "verification FAILED" in text

    def tamper_low(result):
        return dataclasses.replace(result, makespan=result.makespan - 1)

    code, text = cli.cmd_verify(FS, samples=2000, seed=1, tamper=tamper_low)
    assert code == cli.EXIT_VIOLATION


def test_verify_two_activities_grid_agrees(tmp_path):
    path = write(tmp_path, {"activities": ["x", "y"],
                            "sf_lags": {"x": {"x": 2, "y": -1}, "y": {"x": 3, "y": 1}},
                            "early_start": {"x": 0, "y": 1}, "due_date": {"x": 6, "y": 7}})
    code, text = cli.cmd_verify(path, samples=2000, seed=3, fmt="json")
    out = json.loads(text)
    assert code == 0
    grid = out["reports"][1]
    assert grid["kind"] == "grid" and grid["attained"] and grid["best"] == grid["claimed"]


def test_infeasible_due_dates(tmp_path):
    path = write(tmp_path, {"activities": ["a"], "sf_lags": {"a": {"a": 5}},
                            "early_start": {"a": 2}, "due_date": {"a": 6}})
    code, text = cli.cmd_solve(path)
    assert code == cli.EXIT_INFEASIBLE
    assert "InfeasibleDueDates" in text and "f^- C g" in text


def test_cyclic_finish_start(tmp_path):
    path = write(tmp_path, {"activities": ["a", "b"], "sf_lags": {"a": {"a": 2}, "b": {"b": 2}},
                            "fs_lags": {"a": {"b": 0}, "b": {"a": 0}}})
    code, text = cli.cmd_solve(path)
    assert code == cli.EXIT_INFEASIBLE and "CyclicFinishStart" in text


def test_unsupported_combination(tmp_path):
    path = write(tmp_path, {"activities": ["a"], "sf_lags": {"a": {"a": 2}},
                            "fs_lags": {}, "due_date": {"a": 9}})
    code, text = cli.cmd_solve(path)
    assert code == cli.EXIT_UNSUPPORTED and "UnsupportedConstraintCombination" in text


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert cli.cmd_solve(str(bad))[0] == cli.EXIT_INPUT
    assert cli.cmd_verify(str(tmp_path / "missing.json"))[0] == cli.EXIT_INPUT


@pytest.mark.parametrize("fields", [
    set(), {"fs_lags"}, {"early_start"}, {"due_date"}, {"fs_lags", "early_start"},
    {"early_start", "due_date"}, {"fs_lags", "due_date"}, {"fs_lags", "early_start", "due_date"},
])
def test_dispatch_is_total(tmp_path, fields):
    data = {"activities": ["a", "b"], "sf_lags": {"a": {"a": 2}, "b": {"a": 0, "b": 3}}}
    if "fs_lags" in fields:
        data["fs_lags"] = {"b": {"a": 0}}
    if "early_start" in fields:
        data["early_start"] = {"a": 0, "b": 0}
    if "due_date" in fields:
        data["due_date"] = {"a": 10, "b": 10}
    code, _ = cli.cmd_solve(write(tmp_path, data))
    if {"fs_lags", "due_date"} <= fields:
        assert code == cli.EXIT_UNSUPPORTED
    else:
        assert code == cli.EXIT_OK


def test_main(capsys, tmp_path):
    assert cli.main(["solve", SF]) == 0
    assert "minimum makespan: 4" in capsys.readouterr().out
    assert cli.main(["verify", FS, "--samples", "500", "--seed", "7"]) == 0
    assert "verified" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text("[]")
    assert cli.main(["solve", str(bad), "--format", "json"]) == cli.EXIT_INPUT
    assert "ParseError" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        cli.main(["solve"])
