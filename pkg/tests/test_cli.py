import csv
import io
import json
import math
import subprocess
import sys

import pytest

from hexpack import bodies
from hexpack.cli import main
from hexpack.planar import validate_cs_polygon


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def files(tmp_path):
    paths = {}
    named = {
        "square": bodies.square(),
        "disk": bodies.disk_polygon(256),
        "disk512": bodies.disk_polygon(512),
        "octagon": bodies.regular_octagon(),
        "hexagon": bodies.regular_hexagon(1.0),
        "cube": bodies.cube(),
        "ball": bodies.icosphere_face_centers(2),
        "octahedron": bodies.octahedron(),
    }
    for name, body in named.items():
        p = tmp_path / f"{name}.json"
        bodies.write_document(body.to_dict(), p)
        paths[name] = p
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": [[1, 0], [0, 1], [-1, 0], [0, -0.5]]}))
    paths["bad"] = bad
    return paths


def test_constant(capsys):
    code, out = run(capsys, "constant")
    assert code == 0
    assert "paper_bound=0.547550" in out.splitlines()
    assert "smith_bound=0.538350" in out.splitlines()
    _, out = run(capsys, "constant", "--digits", "3")
    assert "paper_bound=0.548" in out
    _, out = run(capsys, "constant", "--json")
    doc = json.loads(out)
    assert doc["paper_bound"] == pytest.approx(0.54755)
    assert doc["smith_bound"] == pytest.approx(0.53835)


def test_area_and_mixed_area(capsys, files):
    code, out = run(capsys, "area", files["square"], "--json")
    assert code == 0 and json.loads(out)["area"] == pytest.approx(4.0)
    code, out = run(capsys, "mixed-area", files["square"], files["square"], "--json")
    doc = json.loads(out)
    assert doc["surface_formula"] == pytest.approx(4.0)
    assert doc["minkowski_oracle"] == pytest.approx(4.0)


@pytest.mark.parametrize("name, expected, tol", [
    ("square", 1.0, 1e-6),
    ("disk", math.pi / math.sqrt(12), 1e-3),
    ("octagon", 0.9061636786439456, 1e-4),
])
def test_delta2(capsys, files, name, expected, tol):
    code, out = run(capsys, "delta2", files[name])
    assert code == 0
    assert json.loads(out)["lower_bound"] == pytest.approx(expected, abs=tol)


def test_minhex_oracle(capsys, files):
    code, out = run(capsys, "minhex-oracle", files["square"], "--resolution", 180, "--json")
    assert code == 0 and json.loads(out)["area"] == pytest.approx(4.0)
    code, out = run(capsys, "minhex-oracle", files["disk"], "--resolution", 360, "--json")
    assert json.loads(out)["area"] == pytest.approx(2 * math.sqrt(3), abs=1e-3)
    code, _ = run(capsys, "minhex-oracle", files["square"], "--resolution", 1000)
    assert code == 1


def test_lemma1(capsys, files, tmp_path):
    code, out = run(capsys, "lemma1", files["disk512"], files["hexagon"])
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and abs(doc["slack"]) < 2e-3
    code, out = run(capsys, "lemma1", files["square"], files["square"])
    doc = json.loads(out)
    assert code == 0 and doc["lhs"] == pytest.approx(doc["rhs"], abs=1e-12)
    for kind in ("cs_polygon", "cs_hexagon"):
        run(capsys, "gen", kind, "--seed", 7, "--out", tmp_path / f"{kind}.json")
    code, out = run(capsys, "lemma1", tmp_path / "cs_polygon.json", tmp_path / "cs_hexagon.json")
    assert code == 0 and json.loads(out)["pass"]


@pytest.mark.parametrize("name, expected, tol", [
    ("cube", 7 / 12, 1e-6),
    ("ball", 0.552300, 2e-3),
    ("octahedron", 7 / 12, 1e-6),
])
def test_bound3(capsys, files, name, expected, tol):
    code, out = run(capsys, "bound3", files[name])
    doc = json.loads(out)
    assert code == 0
    assert doc["bound"] == pytest.approx(expected, abs=tol)
    assert all(step["pass"] for step in doc["audit"])


def test_gen_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for kind in ("cs_polygon", "cs_hexagon", "cs_polytope"):
        run(capsys, "gen", kind, "--seed", 11, "--size", 25, "--out", a)
        run(capsys, "gen", kind, "--seed", 11, "--size", 25, "--out", b)
        assert a.read_bytes() == b.read_bytes()
    run(capsys, "gen", "cs_polygon", "--seed", 11, "--size", 25, "--out", a)
    P = validate_cs_polygon(json.loads(a.read_text())["vertices"])
    assert P.area == pytest.approx(1.0, abs=1e-9)
    assert run(capsys, "gen", "cs_polygon", "--size", 3)[0] == 1
    assert run(capsys, "gen", "cs_polygon", "--size", 5000)[0] == 1


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_pball(capsys):
    code, out = run(capsys, "sweep", "pball", "--values", "1,2,inf")
    assert code == 0
    assert out.splitlines()[0] == "family,parameter,delta_C,bound,runtime_ms"
    rows = _rows(out)
    deltas = [float(r["delta_C"]) for r in rows]
    assert deltas == pytest.approx([1.0, 0.9069, 1.0], abs=1e-3)
    assert all(float(r["bound"]) >= 0.547550 - 1e-3 for r in rows)


def test_sweep_families_and_determinism(capsys, monkeypatch):
    argv = ["sweep", "random", "--start", 0, "--stop", 5, "--num", 6, "--size", 30, "--seed", 3]
    _, first = run(capsys, *argv)
    monkeypatch.setenv("HEXPACK_THREADS", "4")
    _, second = run(capsys, *argv)

    def strip(text):
        return [{k: v for k, v in r.items() if k != "runtime_ms"} for r in _rows(text)]

    assert strip(first) == strip(second)
    assert [float(r["parameter"]) for r in _rows(first)] == [0, 1, 2, 3, 4, 5]
    _, out = run(capsys, "sweep", "zonogon", "--values", "5,3,8")
    rows = _rows(out)
    assert [float(r["parameter"]) for r in rows] == [3, 5, 8]
    assert all(float(r["bound"]) >= 0.547550 - 1e-3 for r in rows)


def test_sweep_3d_mode(capsys):
    code, out = run(capsys, "sweep", "pball", "--values", "1,inf", "--mode", "3d", "--size", 200)
    assert code == 0
    assert all(float(r["bound"]) >= 0.547550 - 1e-3 for r in _rows(out))


def test_sweep_empty_and_bad_range(capsys):
    code, out = run(capsys, "sweep", "pball", "--num", 0)
    assert code == 0 and out == "family,parameter,delta_C,bound,runtime_ms\n"
    code, _ = run(capsys, "sweep", "pball", "--start", 3, "--stop", 1, "--num", 4)
    assert code == 1
    code, _ = run(capsys, "sweep", "pball", "--values", "0.5")
    assert code == 1


def test_exit_codes(capsys, files):
    assert run(capsys, "delta2", files["square"])[0] == 0
    assert run(capsys, "delta2", files["bad"])[0] == 1
    assert run(capsys, "bound3", files["square"])[0] == 1
    assert run(capsys, "lemma1", files["disk"], files["hexagon"], "--delta", 0.5)[0] == 2
    code, out = run(capsys, "delta2", files["octagon"], "--refine-sweeps", 0)
    assert code == 3
    assert json.loads(out)["lower_bound"] > 0.9
    assert run(capsys, "no-such-command")[0] == 1


def test_documents_deterministic(capsys, files):
    assert run(capsys, "delta2", files["octagon"]) == run(capsys, "delta2", files["octagon"])
    assert run(capsys, "bound3", files["cube"]) == run(capsys, "bound3", files["cube"])


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "hexpack", "area", str(files["square"])],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("area=4.0")
