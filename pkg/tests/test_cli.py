import json
import subprocess
import sys
from pathlib import Path

import pytest

from torus_strata.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_hypersimplex_off(capsys):
    code, out = run(capsys, "hypersimplex", "4", "2", "--off")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "OFF" and lines[1].split()[:2] == ["6", "8"]


def test_hypersimplex_json_and_range(capsys):
    code, out = run(capsys, "hypersimplex", "4", "2")
    assert code == 0 and json.loads(out)["dim"] == 3
    code, out = run(capsys, "hypersimplex", "4", "4")
    assert code == 1 and "error" in json.loads(out)


def test_permutahedron(capsys):
    code, out = run(capsys, "permutahedron", "3")
    assert code == 0 and len(json.loads(out)["vertices"]) == 6


def test_matrix_commands(capsys):
    m = str(DATA / "c2.json")
    code, out = run(capsys, "pluecker", "--matrix", m)
    data = json.loads(out)
    assert code == 0 and data["coords"] == {"12": "1", "13": "1", "14": "1", "23": "-2", "24": "-1", "34": "1"}
    assert data["relation_check"] is True
    code, out = run(capsys, "moment", "--matrix", m)
    assert json.loads(out) == {"moment": ["1/3", "2/3", "2/3", "1/3"]}
    code, out = run(capsys, "stratum", "--matrix", m)
    data = json.loads(out)
    assert data["torus_dim"] == 3 and len(data["support"]) == 6


def test_missing_matrix_file(capsys):
    code, out = run(capsys, "moment", "--matrix", "/nonexistent.json")
    assert code == 1 and json.loads(out)["type"] in ("FileNotFoundError", "OSError")


def test_family_queries(capsys):
    code, out = run(capsys, "regular", "--family", "g42", "--point", "1/2,1/2,1/2,1/2")
    assert code == 0 and json.loads(out) == {"regular": False}
    code, out = run(capsys, "cortege", "--family", "g42", "--point", "7/10,1/2,2/5,2/5")
    assert len(json.loads(out)["cortege"]) == 4
    code, out = run(capsys, "topology", "--family", "f3")
    assert not any(json.loads(out).values())
    code, out = run(capsys, "topology", "--family", f"quasitoric:{DATA / 'hirzebruch1.json'}")
    assert all(json.loads(out).values())


def test_complex_and_user_family(capsys, tmp_path):
    code, out = run(capsys, "complex", "--family", "sphere:2")
    data = json.loads(out)
    assert code == 0 and len(data["cells"]) == 3 and len(data["order"]) == 2
    path = tmp_path / "mine.json"
    path.write_text(out)
    code, out = run(capsys, "topology", "--family", str(path))
    assert code == 0 and all(json.loads(out).values())
    code, out = run(capsys, "complex", "--family", "g42")
    assert ["{12,13,14,24,34}", "{12,13,14,23,24,34}"] in json.loads(out)["order"]


def test_models(capsys):
    code, out = run(capsys, "model", "--id", "sphere:4")
    assert json.loads(out)["model"] == "join(S^0, CP^3)"
    code, out = run(capsys, "model", "--id", "cp5")
    assert json.loads(out)["model"] == "join(S^2, CP^2)"
    code, out = run(capsys, "model", "--id", f"quasitoric:{DATA / 'hirzebruch1.json'}")
    assert code == 0 and json.loads(out)["kind"] == "polytope"
    code, out = run(capsys, "model", "--id", f"quasitoric:{DATA / 'bad_triangle.json'}")
    assert code == 1 and "det 2" in json.loads(out)["error"]
    code, out = run(capsys, "model", "--id", "nope")
    assert code == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "everything"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["hypersimplex", "4"])
    assert e.value.code == 2


def test_verify_gs73(capsys):
    code, out = run(capsys, "verify", "gs73")
    data = json.loads(out)
    assert code == 0 and data["gs73"]["verdict"] == {"boundary_meets": True, "not_contained": True}
    code, out = run(capsys, "verify", "cwcq", "--text")
    assert code == 0 and "not closed in the CW topology: True" in out


def test_no_floats_in_output(capsys):
    _, out = run(capsys, "verify", "all", "--seed", "3")

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(out))


def test_seed_env_and_byte_identity(tmp_path):
    cmd = [sys.executable, "-m", "torus_strata", "verify", "all", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    env_run = subprocess.run(
        [sys.executable, "-m", "torus_strata", "verify", "gs73"],
        capture_output=True,
        env={"TORUS_STRATA_SEED": "7", "PATH": "/usr/bin:/bin"},
        check=True,
    ).stdout
    assert json.loads(env_run)["seed"] == 7
