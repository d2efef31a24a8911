import json
import subprocess
import sys
from pathlib import Path

import pytest

from cyclovertex.cli import main
from cyclovertex.vla import preset

ROOT = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_list(capsys):
    code, out, _ = run(capsys, "algebra", "list")
    assert code == 0 and out.split() == ["affine_sl2", "heisenberg_sl2", "virasoro"]


def test_algebra_show(capsys):
    code, out, _ = run(capsys, "algebra", "show", "virasoro")
    assert code == 0 and "w_(3)w = 1/2*c" in out
    code, out, _ = run(capsys, "algebra", "show", "virasoro", "--json")
    assert json.loads(out)["schema"] == 1


def test_algebra_check(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(preset("affine_sl2").to_config()))
    assert run(capsys, "algebra", "check", str(good))[0] == 0
    cfg = preset("virasoro").to_config()
    for p in cfg["products"]:
        if p["n"] == 1:
            p["value"][0]["coeff"] = ["3"]
    bad = tmp_path / "broken.cfg"
    bad.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "algebra", "check", str(bad))
    assert code == 1 and "skew-symmetry" in out


def test_compute_commands(capsys):
    assert run(capsys, "bracket", "virasoro", "w[2]", "w[-2]")[1].strip() == "4*w[0] + 1/2*c(-1)"
    out = run(capsys, "ope", "affine_sl2", "e(-1)|0>", "f(-1)|0>")[1]
    assert out.splitlines() == ["n=0: h(-1)|0>", "n=1: |0>"]
    out = run(capsys, "nthprod", "virasoro", "w", "w", "--n", "3")[1]
    assert out.strip() == "x_(3) y = 1/2*c"
    out = run(capsys, "yw", "heisenberg_sl2", "e(-1)e*(-1)|0>", "--T", "2", "--order", "-1")[1]
    assert out.strip() == "u^-1: 1/2*|0>"


def test_reduce(capsys, tmp_path):
    cfg = tmp_path / "need0_T2.cfg"
    cfg.write_text(json.dumps({"algebra": "heisenberg_sl2", "T": 2, "points": [], "origin": False}))
    code, out, _ = run(capsys, "reduce", "--config", str(cfg), "e(-1)e*(-1)|0>", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert data["result"]["terms"][0]["coeff"]["text"] == "1/2*u^-1"


def test_default_T_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CYCLOVERTEX_DEFAULT_T", "2")
    out = json.loads(run(capsys, "algebra", "show", "heisenberg_sl2", "--json")[1])
    assert out["order"] == 2
    monkeypatch.setenv("CYCLOVERTEX_DEFAULT_T", "zero")
    assert run(capsys, "algebra", "show", "heisenberg_sl2")[0] == 2


def test_errors(capsys):
    code, _, err = run(capsys, "ope", "virasoro", "w(-1)|0>", "q(-1)|0>")
    assert code == 2 and "position 0" in err
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nope"])


def test_verify_json_is_byte_identical():
    cmd = [sys.executable, "-m", "cyclovertex.cli", "verify", "--suite", "alpha-u", "--T", "2",
           "--seed", "5", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=False, cwd=ROOT)
    b = subprocess.run(cmd, capture_output=True, check=False, cwd=ROOT)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert json.loads(a.stdout)["schema"] == 1


def test_verify_exit_code_tracks_failures(capsys):
    assert run(capsys, "verify", "--suite", "skew", "--depth", "2")[0] == 0
    code, out, _ = run(capsys, "verify", "--suite", "need0", "--T", "3")
    assert code == 1 and "reduced_coefficient" in out
