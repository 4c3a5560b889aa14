import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from combindep.cli import RunConfig, main
from combindep.constructions import verify_toeplitz
from combindep.serialize import toeplitz_from_json

INPUTS = Path(__file__).resolve().parent.parent / "demos" / "inputs"


def inp(name):
    return str(INPUTS / name)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_lang(capsys):
    assert run_json(capsys, "lang", inp("golden_mean.json"), 2)["words"] == ["00", "01", "10"]
    code, out, _ = run(capsys, "lang", inp("full2.json"), 1, "--format", "csv")
    assert code == 0 and out.split() == ["0", "1"]
    code, _, err = run(capsys, "lang", inp("full2.json"), 0)
    assert code == 1 and err


def test_indep(capsys):
    gm, pair = inp("golden_mean.json"), inp("pair.json")
    assert run_json(capsys, "indep", gm, pair, "check", 0, 2)["independent"] is True
    assert run_json(capsys, "indep", gm, pair, "check", 0, 1)["independent"] is False
    assert run_json(capsys, "indep", gm, pair, "max", 0, 6)["best"] == [0, 2, 4]
    code, out, _ = run(capsys, "indep", inp("full2.json"), pair, "profile", 8, "--format", "csv")
    rows = out.strip().splitlines()
    assert code == 0 and rows[0] == "n,best,ratio"
    assert [r.split(",")[2] for r in rows[1:]] == ["1.0"] * 8


def test_entropy(capsys):
    pair = inp("pair.json")
    rows = run_json(capsys, "entropy", inp("full2.json"), pair, 6)["rows"]
    assert len(rows) == 6 and all(math.isclose(r["rate"], math.log(2)) for r in rows)
    rows = run_json(capsys, "entropy", inp("golden_mean.json"), pair, 6)["rows"]
    assert [r["count"] for r in rows] == [2, 3, 5, 8, 13, 21]
    assert all(math.isclose(r["rate"], math.log(r["count"]) / r["n"]) for r in rows)
    code, _, err = run(capsys, "entropy", inp("full2.json"), pair, 6, "--budget", 5)
    assert code == 2 and "budget" in err


def test_shatter(capsys, tmp_path):
    full, three = inp("trace_full3.json"), inp("trace_three.json")
    assert run_json(capsys, "shatter", full, "largest")["largest"] == [1, 2, 3]
    assert run_json(capsys, "shatter", three, "fs")["F_S"] == 3
    assert run_json(capsys, "shatter", three, "hs")["H_S"] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"window": [1], "k": 2, "patterns": ["12"]}')
    code, _, err = run(capsys, "shatter", bad, "fs")
    assert code == 1 and err
    bad.write_text("[")
    assert run(capsys, "shatter", bad, "fs")[0] == 1


def test_toeplitz(capsys, tmp_path):
    out = tmp_path / "spec.json"
    code, _, _ = run(capsys, "toeplitz", "build", "--levels", 2, "--out", out)
    assert code == 0
    spec = toeplitz_from_json(json.loads(out.read_text()))
    assert spec.levels == 2 and verify_toeplitz(spec).ok
    assert run_json(capsys, "toeplitz", "verify", out)["ok"] is True
    n2 = spec.period(2)
    win = run_json(capsys, "toeplitz", "window", out, -n2, n2)
    assert len(win["digits"]) == len(win["mask"]) == 2 * n2
    assert "?" in win["mask"]
    rep = run_json(capsys, "toeplitz", "lemmas", "toeplitz_level3", 0, 144)
    assert rep["ok"] and all(not r["counterexamples"] for r in rep["lemmas"])
    assert run(capsys, "toeplitz", "build", "--levels", 0)[0] == 1


def test_horizon_exit_code(capsys):
    code, _, err = run(capsys, "lang", inp("toeplitz3.json"), 20000)
    assert code == 2 and "horizon" in err
    code, _, _ = run(capsys, "lang", inp("full2.json"), 5, "--horizon", 4)
    assert code == 2


def test_sweep_determinism(capsys):
    first = run(capsys, "sweep", "counting", "--count", 20, "--seed", 11)
    second = run(capsys, "sweep", "counting", "--count", 20, "--seed", 11)
    assert first == second and first[0] == 0
    assert json.loads(first[1])["seed"] == 11
    unseeded = run_json(capsys, "sweep", "counting", "--count", 5)
    assert unseeded == run_json(capsys, "sweep", "counting", "--count", 5)


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "csv"}))
    code, out, _ = run(capsys, "lang", inp("full2.json"), 2, "--config", cfg)
    assert code == 0 and out.split() == ["00", "01", "10", "11"]
    cfg.write_text(json.dumps({"colour": "red"}))
    code, _, err = run(capsys, "lang", inp("full2.json"), 2, "--config", cfg)
    assert code == 1 and "colour" in err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig.from_mapping({"budget": 0})
    with pytest.raises(ValueError):
        RunConfig.from_mapping({"format": "xml"})
    with pytest.raises(ValueError):
        RunConfig.from_mapping({"unknown": 1})
    assert RunConfig.from_mapping({"budget": 10}).budget == 10


def test_bad_usage(capsys):
    assert run(capsys, "nope")[0] == 1
    assert run(capsys, "lang", inp("missing.json"), 2)[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "combindep", "lang", inp("golden_mean.json"), "2", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.split() == ["00", "01", "10"]
