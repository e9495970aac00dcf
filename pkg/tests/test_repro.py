from fractions import Fraction

import pytest

from dsbicubic.fixtures import CONTROL_ROWS_TABLE, DETERMINANT_TABLE
from dsbicubic.g1 import Verdict
from dsbicubic.patches import ConstructionConfig, CornerSource
from dsbicubic.repro import (
    all_configs,
    course_json,
    course_tsv,
    fit_to_table,
    reproduce,
    run_course,
    search,
)

TABLE = [x for r in CONTROL_ROWS_TABLE for p in r for x in p]


def test_fit_exact_multiple():
    s, res = fit_to_table([Fraction(5, 2) * t for t in TABLE], TABLE)
    assert s == Fraction(5, 2) and res == 0


def test_fit_residual_is_scale_invariant():
    noisy = list(TABLE)
    noisy[3] += 1
    s1, r1 = fit_to_table(noisy, TABLE)
    s2, r2 = fit_to_table([7 * x for x in noisy], TABLE)
    assert r1 == r2 > 0
    assert s2 == 7 * s1


def test_fit_negative_scale_is_rejected():
    s, res = fit_to_table([-t for t in TABLE], TABLE)
    assert s is None and res == max(abs(t) for t in TABLE)


def test_fit_length_mismatch():
    with pytest.raises(ValueError):
        fit_to_table([1, 2], [1, 2, 3])


def test_config_space():
    configs = all_configs()
    assert len(configs) == 72
    assert len(set(configs)) == 72


@pytest.fixture(scope="module")
def ranked():
    return search()


def test_search_is_deterministic(ranked):
    again = search()
    assert [r.to_dict() for r in again] == [r.to_dict() for r in ranked]


def test_search_finds_exact_configs(ranked):
    exact = [r for r in ranked if r.match_quality == "ExactProportional"]
    assert len(exact) == 4
    assert all(r.residual == 0 and r.scale > 0 for r in exact)
    labels = {(r.config.steps, r.config.interior_rule) for r in exact}
    assert labels == {(2, "midway"), (3, "direct")}
    assert all(r.config.corner_source is CornerSource.LEVEL1_FACETS for r in exact)
    residuals = [r.residual for r in ranked]
    assert residuals == sorted(residuals)


def test_search_residuals_do_not_depend_on_scale(ranked):
    unit = {r.config: r.residual for r in search(scale=1)}
    assert all(unit[r.config] == r.residual for r in ranked)


def test_reproduce_default_config():
    fixture, pipeline = reproduce()
    assert fixture.passed and pipeline.passed
    assert fixture.verdict is Verdict.NOT_G1 and pipeline.verdict is Verdict.NOT_G1
    assert pipeline.det_primitive == DETERMINANT_TABLE
    assert [c.name for c in pipeline.checks] == ["control rows", "derivative rows", "determinant"]


def test_reproduce_mismatching_config_fails_pipeline_only():
    fixture, pipeline = reproduce(config=ConstructionConfig(steps=1))
    assert fixture.passed
    assert not pipeline.passed


def test_course_bundled_corpus():
    from importlib.resources import files

    rows = run_course(files("dsbicubic") / "data" / "course")
    assert [r.name for r in rows] == ["cube.obj", "prism.off", "tetrahedron.off"]
    assert all(r.ok for r in rows)
    tetra = rows[-1]
    assert (tetra.patches, tetra.edges, tetra.g1, tetra.not_g1) == (12, 24, 0, 24)
    assert tetra.max_normal_jump > 0
    tsv = course_tsv(rows)
    assert tsv.count("\n") == 4 and tsv.startswith("name\tok")
    assert course_json(rows) == course_json(run_course(files("dsbicubic") / "data" / "course"))


def test_course_reports_bad_files(tmp_path):
    (tmp_path / "bad.obj").write_text("v 0 0\n")
    (tmp_path / "open.obj").write_text("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n")
    (tmp_path / "notes.txt").write_text("ignored")
    rows = run_course(tmp_path)
    assert [r.name for r in rows] == ["bad.obj", "open.obj"]
    assert rows[0].parse_error and not rows[0].ok
    assert not rows[1].parse_error and not rows[1].ok
