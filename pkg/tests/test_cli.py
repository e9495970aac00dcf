import io
import json
import random
import subprocess
import sys
from importlib.resources import files

import pytest

from dsbicubic.cli import main
from dsbicubic.fixtures import linear_boundary_complex, mirror_patch_pair
from dsbicubic.mesh import load_mesh, make_cube, make_tetrahedron, write_mesh
from dsbicubic.patches import PatchComplex, complex_to_json, split_patch_complex

from test_patches import random_patch

COURSE = files("dsbicubic") / "data" / "course"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def tetra_off(tmp_path):
    path = tmp_path / "tetra.off"
    write_mesh(make_tetrahedron(1260), path)
    return path


@pytest.fixture
def tetra_json(tmp_path, tetra_off):
    path = tmp_path / "tetra.json"
    code, _ = run("construct", tetra_off, "-o", path)
    assert code == 0
    return path


def test_subdivide_one_step(tetra_off, tmp_path):
    out_path = tmp_path / "s.obj"
    code, out = run("subdivide", tetra_off, "--steps", 1, "-o", out_path)
    assert code == 0
    assert "level 1: V=12 E=24 F=14 euler=2" in out
    assert load_mesh(out_path.read_bytes(), "obj").stats().line() == "V=12 E=24 F=14 euler=2"


def test_subdivide_zero_steps_reproduces_input(tetra_off):
    code, out = run("subdivide", tetra_off, "--steps", 0, "--format", "off")
    assert code == 0
    body = out.split("\n", 1)[1]
    assert load_mesh(body, "off") == make_tetrahedron(1260)


def test_subdivide_three_steps(tetra_off):
    code, out = run("subdivide", tetra_off, "--steps", 3, "-o", tetra_off.with_name("x.off"))
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("euler=2")


def test_subdivide_errors(tmp_path):
    assert run("subdivide", tmp_path / "missing.obj")[0] == 2
    bad = tmp_path / "bad.obj"
    bad.write_text("v 0 0 0\nf 0 1 2\n")
    assert run("subdivide", bad)[0] == 2
    assert run("subdivide")[0] == 2


def test_construct_reports_and_tessellates(tetra_off, tmp_path):
    tess = tmp_path / "t.obj"
    code, out = run("construct", tetra_off, "-o", tmp_path / "c.json", "--tessellate", 2, "--tess-output", tess)
    assert code == 0
    assert "patches=12 shared_edges=24 c0_violations=0 degenerate=0" in out
    assert "split points C1: 6/6" in out
    assert len(load_mesh(tess.read_bytes(), "obj").faces) == 48
    assert run("construct", tetra_off, "--tessellate", 2)[0] == 2


def test_check_g1_on_counterexample(tetra_json):
    code, out = run("check-g1", tetra_json)
    assert code == 1
    assert "NotG1=24" in out and "necessary-condition" in out
    code, out = run("check-g1", tetra_json, "--json")
    doc = json.loads(out)
    assert doc["summary"] == {"G1": 0, "NotG1": 24, "Degenerate": 0}


def test_check_g1_exit_codes(tmp_path, rng):
    g1 = tmp_path / "g1.json"
    g1.write_text(complex_to_json(split_patch_complex(random_patch(rng))))
    assert run("check-g1", g1)[0] == 0
    assert run("check-g1", g1, "--mode", "unbiased")[0] == 0
    deg = tmp_path / "deg.json"
    deg.write_text(complex_to_json(linear_boundary_complex()))
    assert run("check-g1", deg)[0] == 3
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run("check-g1", broken)[0] == 2
    assert run("check-g1", tmp_path / "none.json")[0] == 2


def test_normal_jump_command(tetra_json, tmp_path, rng):
    code, out = run("normal-jump", tetra_json, "--edge", 0, "--samples", 64)
    assert code == 0
    angle = float(out.split("max_angle=")[1].split()[0])
    assert angle > 0
    code, out = run("normal-jump", tetra_json, "--json")
    assert len(json.loads(out)) == 24
    assert run("normal-jump", tetra_json, "--edge", 99)[0] == 2
    assert run("normal-jump", tetra_json, "--samples", 1)[0] == 2


def test_repro_counterexample():
    code, out = run("repro-counterexample")
    assert code == 1
    assert "determinant: PASS" in out
    assert "[-1, 2, -1]  [0, 3, -3]" in out
    assert "[0, 105, 185, 105, 36, 5, 0, 0, 0]" in out
    assert "FAIL" not in out


def test_repro_bad_scale():
    assert run("repro-counterexample", "--scale", "abc")[0] == 2


def test_search_json_is_byte_identical():
    a, b = run("search", "--json"), run("search", "--json")
    assert a == b and a[0] == 0
    ranked = json.loads(a[1])
    assert len(ranked) == 72
    assert ranked[0]["match_quality"] == "ExactProportional"
    assert run("search", "--target", "no-such-table")[0] == 2


def test_course_command(tmp_path):
    tsv = tmp_path / "r.tsv"
    code, out = run("course", COURSE, "--tsv", tsv)
    assert code == 0
    assert len(tsv.read_text().splitlines()) == 4
    assert "tetrahedron.off" in out
    (tmp_path / "corpus").mkdir()
    (tmp_path / "corpus" / "bad.off").write_text("OFF\n1 1 0\n")
    write_mesh(make_cube(), tmp_path / "corpus" / "cube.obj")
    code, out = run("course", tmp_path / "corpus")
    assert code == 2
    assert "cube.obj" in out
    assert run("course", tmp_path / "missing")[0] == 2


def test_module_entry_point(tmp_path):
    p, q = mirror_patch_pair(random_patch(random.Random(5)))
    path = tmp_path / "pair.json"
    path.write_text(complex_to_json(PatchComplex.from_patches([p, q], [(0, 1, 2, 3), (4, 5, 1, 0)])))
    proc = subprocess.run([sys.executable, "-m", "dsbicubic", "check-g1", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "G1=1" in proc.stdout


def test_help_exits_cleanly():
    assert run("--help")[0] == 0
