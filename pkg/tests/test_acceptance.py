"""Acceptance criteria, one test each, with their runtime budgets.

Run alone with ``pytest tests/test_acceptance.py`` (or execute this file);
the terminal summary lists one PASS/FAIL line per criterion.
"""

import io
import json
import random
import sys
from fractions import Fraction

import pytest

from dsbicubic.cli import main
from dsbicubic.doosabin import ds_refine, ds_step
from dsbicubic.exact import primitive_vector
from dsbicubic.fixtures import (
    DERIVATIVE_ROWS_TABLE,
    DETERMINANT_TABLE,
    mirror_edge_data,
    random_rows,
    table_edge_data,
)
from dsbicubic.g1 import Verdict, edge_derivatives, g1_necessary_test, normal_jump
from dsbicubic.mesh import make_cube, make_prism, make_tetrahedron
from dsbicubic.patches import build_complex, complex_to_json, extract_edge_data
from dsbicubic.repro import DEFAULT_CONFIG, all_configs, counterexample_edge, reproduce, search

from acceptance_log import criterion
from oracles import det3


def _cli(*argv):
    out = io.StringIO()
    return main([str(a) for a in argv], out), out.getvalue()


def _random_affine(rng):
    while True:
        M = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3)] for _ in range(3)]
        if det3(*M) > 0:
            return M, [rng.randint(-9, 9) for _ in range(3)]


def test_derivative_rows_match_published_table():
    with criterion("derivative rows proportional to the published table (exact)", 1.0):
        ders = edge_derivatives(table_edge_data())
        got_scale, got = primitive_vector([x for v in ders for p in v.control_points() for x in p])
        want_scale, want = primitive_vector([x for r in DERIVATIVE_ROWS_TABLE for p in r for x in p])
        assert [v.degree for v in ders] == [3, 2, 3]
        assert got == want
        assert got_scale / want_scale > 0


def test_determinant_matches_published_integers():
    with criterion("determinant ~ [0,105,185,105,36,5,0,0,0], verdict NotG1", 1.0):
        r = g1_necessary_test(table_edge_data())
        assert list(r.det_primitive) == [0, 105, 185, 105, 36, 5, 0, 0, 0]
        assert r.verdict is Verdict.NOT_G1


def test_trivial_zero_anchors():
    with criterion("structural zeros of the determinant (hand 3x3 oracle)"):
        assert det3((-1, 2, -1), (2, -1, -1), (1, 1, -2)) == 0
        # same check at u = 1 from the last coefficient of each row
        assert det3(*(row[-1] for row in DERIVATIVE_ROWS_TABLE)) == 0
        d = g1_necessary_test(table_edge_data()).det_primitive
        assert d[0] == 0 and d[-3:] == (0, 0, 0)
        assert d == DETERMINANT_TABLE


def test_c1_mirror_fixture_soundness():
    with criterion("C1 mirror fixture: det == 0 and unbiased for 100 instances"):
        rng = random.Random(1)
        for _ in range(100):
            r = g1_necessary_test(mirror_edge_data(random_rows(rng), random_rows(rng)))
            assert r.is_coplanar and r.det_poly.is_zero()
            assert r.unbiased_ok
            assert r.verdict is Verdict.G1


def test_doo_sabin_combinatorics():
    with criterion("Doo-Sabin combinatorics, iterated identities, affine equivariance", 5.0):
        m = ds_step(make_tetrahedron())
        assert m.stats().line() == "V=12 E=24 F=14 euler=2"
        assert {m.valence(v) for v in range(12)} == {4}
        for make in (make_tetrahedron, make_cube, make_prism):
            trace = ds_refine(make(), 3)
            for prev, cur in zip(trace.meshes, trace.meshes[1:]):
                assert len(cur.vertices) == prev.halfedge_count
                assert len(cur.faces) == len(prev.faces) + len(prev.vertices) + len(prev.edges)
                assert len(cur.edges) == 2 * len(prev.edges) + prev.halfedge_count
                assert cur.euler == prev.euler
                assert {cur.valence(v) for v in range(len(cur.vertices))} == {4}
        rng = random.Random(2)
        base = make_prism()
        ref = ds_step(base)
        for _ in range(20):
            M, t = _random_affine(rng)
            assert ds_step(base.transformed(M, t)) == ref.transformed(M, t)


def test_counterexample_gate(tmp_path):
    with criterion("counterexample gate: repro exits NotG1, check-g1 exits 1", 10.0):
        code, out = _cli("repro-counterexample")
        assert code == 1
        fixture_block = out.split("== pipeline path ==")[0]
        assert "verdict: NotG1" in fixture_block
        best = search()[0]
        mesh = make_tetrahedron(1260)
        c = build_complex(ds_refine(mesh, best.config.steps, best.config.weights_variant), best.config)
        path = tmp_path / "best.json"
        path.write_text(complex_to_json(c))
        code, _ = _cli("check-g1", path)
        assert code == 1


def test_construction_search_report():
    with criterion("search: full space, deterministic ranking, pipeline PASS at residual 0"):
        first = search()
        assert len(first) == len(all_configs())
        assert [r.to_dict() for r in search()] == [r.to_dict() for r in first]
        assert [r.residual for r in first] == sorted(r.residual for r in first)
        code_a, out_a = _cli("search", "--json")
        code_b, out_b = _cli("search", "--json")
        assert code_a == code_b == 0 and out_a == out_b
        assert len(json.loads(out_a)) == len(first)
        zero = [r for r in first if r.residual == 0]
        assert zero, "no construction variant reproduces the control-point table"
        for r in zero:
            fixture, pipeline = reproduce(config=r.config)
            assert fixture.passed and pipeline.passed


def test_normal_jump_consistency():
    with criterion("normal jump > 0 on the counterexample, < 1e-12 on C1", 2.0):
        assert normal_jump(table_edge_data(), 64).max_angle > 0
        mesh = make_tetrahedron(1260)
        c = build_complex(ds_refine(mesh, DEFAULT_CONFIG.steps), DEFAULT_CONFIG)
        assert normal_jump(extract_edge_data(c, counterexample_edge(c, mesh)), 64).max_angle > 0
        rng = random.Random(3)
        for _ in range(10):
            e = mirror_edge_data(random_rows(rng), random_rows(rng))
            assert normal_jump(e, 64).max_angle < 1e-12


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
