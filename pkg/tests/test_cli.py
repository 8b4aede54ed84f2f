from __future__ import annotations

import json
import subprocess
import sys

import pytest

from trigdef.cli import main, seed_list
from trigdef.trigonal import TrigonalCurve, reducible_gamma_curve


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,value", [
    (("--n", "3", "--d1", "1,0", "--d2", "1,0"), "-3"),
    (("--n", "2", "--d1", "1,3", "--d2", "0,1"), "1"),
    (("--n", "3", "--d1", "1,4", "--d2", "1,4"), "5"),
])
def test_intersect(capsys, argv, value):
    code, out, _ = run(capsys, "intersect", *argv)
    assert code == 0 and out.strip() == value


def test_intersect_parse_failure(capsys):
    code, _, err = run(capsys, "intersect", "--n", "3", "--d1", "1", "--d2", "0,1")
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("argv,value", [
    (("--n", "3", "--d", "0,1"), "(2,0,0,2)"),
    (("--n", "0", "--d", "1,1"), "(4,0,0,4)"),
    # dual to (0,1): h1 = 0
    (("--n", "3", "--d", "-2,-6"), "(0,0,2,2)"),
    (("--n", "3", "--d", "-2,-2"), "(0,2,0,-2)"),
])
def test_cohomology(capsys, argv, value):
    code, out, _ = run(capsys, "cohomology", *argv)
    assert code == 0 and out.strip() == value


def test_cohomology_json(capsys):
    code, out, _ = run(capsys, "cohomology", "--n", "3", "--d=0,1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"n": 3, "d": [0, 1], "h0": 2, "h1": 0, "h2": 0, "chi": 2}


def test_curve_gen(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "curve-gen", "--g", "7", "--k", "1", "--seed", "42", "--out", str(path))
    assert code == 0 and "discriminant degree 18" in out and "accepted=True" in out
    curve = TrigonalCurve.load(path)
    assert curve.degrees == (9, 6, 3, 0) and curve.seed == 42
    code, out, _ = run(capsys, "curve-gen", "--g", "6", "--k", "2", "--seed", "7")
    assert code == 0 and TrigonalCurve.from_json(out).n == 0


def test_curve_gen_rejects_bad_k(capsys):
    code, _, err = run(capsys, "curve-gen", "--g", "7", "--k", "3")
    assert code == 2 and "Maroni" in err


def test_curve_gen_exhaustion_exit_code(capsys, monkeypatch):
    from trigdef import cli, trigonal

    def boom(g, k, seed):
        raise trigonal.CurveGenerationError(g, k, seed, 1000)

    monkeypatch.setattr(cli, "random_curve", boom)
    code, _, err = run(capsys, "curve-gen", "--g", "7", "--k", "1", "--seed", "1")
    assert code == 3 and "seed=1" in err


def test_maroni(capsys, tmp_path):
    code, out, _ = run(capsys, "maroni", "--g", "12")
    assert code == 0 and out.split() == ["3", "4", "5"]
    code, out, _ = run(capsys, "maroni", "--g", "7", "--k", "1", "--seed", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["computed_k"] == 1 and data["h0_jL"] == [1, 2, 3, 5]
    code, _, _ = run(capsys, "maroni", "--g", "5")
    assert code == 2


@pytest.mark.parametrize("g,k,fixed", [(9, 2, [0, 0]), (7, 1, [2, 6]), (6, 1, [2, 5])])
def test_verify(capsys, tmp_path, g, k, fixed):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--g", str(g), "--k", str(k), "--seed", "1",
                       "--json", str(path))
    assert code == 0 and out.strip().endswith("PASS")
    data = json.loads(path.read_text())
    assert data["pass"] and data["curve_file"] is None
    assert {c["name"]: c["computed"] for c in data["checks"]}["fixed_part"] == fixed


def test_verify_failure_names_check(capsys, tmp_path):
    path = tmp_path / "bad.json"
    reducible_gamma_curve(7, 1).save(path)
    code, out, _ = run(capsys, "verify", "--curve", str(path), "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["curve_file"] == str(path)
    assert not data["pass"]
    code, out, _ = run(capsys, "verify", "--curve", str(path))
    assert code == 1 and "FAIL: gamma_irreducible" in out


def test_verify_usage(capsys):
    assert run(capsys, "verify", "--g", "7")[0] == 2
    assert run(capsys, "verify", "--g", "7", "--k", "3", "--seed", "1")[0] == 2


def test_seed_list_parsing():
    assert seed_list("1,2,3") == [1, 2, 3]
    assert seed_list("1..5") == [1, 2, 3, 4, 5]
    assert seed_list("1..2,9") == [1, 2, 9]
    assert seed_list("") == []


def test_sweep_usage(capsys):
    assert run(capsys, "sweep", "--g-min", "6", "--g-max", "8", "--seeds", "")[0] == 2
    assert run(capsys, "sweep", "--g-min", "5", "--g-max", "8", "--seeds", "1")[0] == 2
    assert run(capsys, "sweep", "--g-min", "6", "--g-max", "15", "--seeds", "1")[0] == 2
    assert run(capsys, "sweep", "--g-min", "6", "--g-max", "8", "--seeds", "x")[0] == 2


def test_sweep_cells_and_threads(capsys, tmp_path, monkeypatch):
    one, two = tmp_path / "one.json", tmp_path / "two.json"
    monkeypatch.setenv("TRIGONAL_THREADS", "1")
    code, out, _ = run(capsys, "sweep", "--g-min", "6", "--g-max", "8", "--seeds", "2,1",
                       "--json", str(one))
    assert code == 0 and out.strip().endswith("PASS")
    data = json.loads(one.read_text())
    assert [(c["g"], c["k"]) for c in data["cells"]] == \
        [(6, 1), (6, 2), (7, 1), (7, 2), (8, 2), (8, 3)]
    assert all([r["seed"] for r in c["runs"]] == [1, 2] for c in data["cells"])
    monkeypatch.setenv("TRIGONAL_THREADS", "3")
    run(capsys, "sweep", "--g-min", "6", "--g-max", "8", "--seeds", "1,2", "--json", str(two))
    assert one.read_bytes() == two.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trigdef", "intersect", "--n", "3",
                           "--d1", "1,0", "--d2", "1,0"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "-3"
