"""Counterexample reproduction, construction-space search and batch runs."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .doosabin import LimitMethod, Variant, ds_refine
from .exact import as_exact, primitive_vector
from .fixtures import CONTROL_ROWS_TABLE, DERIVATIVE_ROWS_TABLE, DETERMINANT_TABLE, TETRA_SCALE, table_edge_data
from .g1 import (
    Verdict,
    check_complex,
    edge_derivatives,
    g1_necessary_test,
    normal_jump,
    summarize,
)
from .mesh import MeshError, make_tetrahedron, read_mesh
from .patches import (
    INTERIOR_RULES,
    ConstructionConfig,
    CornerSource,
    EdgeData,
    PatchComplex,
    build_complex,
    extract_edge_data,
)

__all__ = [
    "DEFAULT_CONFIG",
    "SearchResult",
    "TableCheck",
    "ReproReport",
    "all_configs",
    "counterexample_edge",
    "fit_to_table",
    "search",
    "reproduce",
    "CourseRow",
    "run_course",
    "course_tsv",
    "course_json",
]

DEFAULT_CONFIG = ConstructionConfig()


def _flat(rows) -> list[Fraction]:
    return [as_exact(x) for row in rows for p in row for x in p]


def fit_to_table(values, table) -> tuple[Fraction | None, Fraction]:
    """Best positive scale ``s`` with ``values ~ s * table`` and the residual.

    The scale is the least-squares one; the residual is the largest
    deviation ``|values / s - table|`` measured in table units, so it does
    not change when ``values`` are scaled.  A non-positive fit gives
    ``s = None`` and the table's largest entry as residual.
    """
    x = [as_exact(v) for v in values]
    t = [as_exact(v) for v in table]
    if len(x) != len(t):
        raise ValueError("value and table lengths differ")
    tt = sum(v * v for v in t)
    s = sum(a * b for a, b in zip(x, t)) / tt
    if s <= 0:
        return None, max(abs(v) for v in t)
    return s, max(abs(a / s - b) for a, b in zip(x, t))


# -- the v -> m edge of the tetrahedron -------------------------------------


def _tetra_edge_cd(mesh) -> int:
    for k, (h, t) in enumerate(mesh.edges):
        if {mesh.he_origin[h], mesh.he_origin[t]} == {2, 3}:
            return k
    raise KeyError("tetrahedron has no edge C-D")


def counterexample_edge(c: PatchComplex, mesh) -> int:
    """Shared edge leaving the limit point of face B, C, D toward edge C-D.

    In the split layout this ends at the split point of C-D; without split
    points it ends at the limit point of vertex D.
    """
    v = c.find_corner("face", 0)
    try:
        other = c.find_corner("edge", _tetra_edge_cd(mesh))
    except KeyError:
        other = c.find_corner("vertex", 3)
    return c.edge_index(v, other)


# the one target understood by ``search``: the control-point table
SEARCH_TARGET = "eq3"


@dataclass(frozen=True)
class SearchResult:
    config: ConstructionConfig
    match_quality: str
    residual: Fraction
    scale: Fraction | None
    target: str = SEARCH_TARGET

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "match_quality": self.match_quality,
            "residual": f"{self.residual.numerator}/{self.residual.denominator}",
            "scale": None if self.scale is None else f"{self.scale.numerator}/{self.scale.denominator}",
            "target": self.target,
        }


def all_configs() -> list[ConstructionConfig]:
    """Every construction variant, in a fixed order."""
    return [
        ConstructionConfig(steps, variant, limit, corners, rule)
        for steps, variant, limit, corners, rule in itertools.product(
            (1, 2, 3), list(Variant), list(LimitMethod), list(CornerSource), list(INTERIOR_RULES)
        )
    ]


def search(scale=TETRA_SCALE, configs=None) -> list[SearchResult]:
    """Fit every construction variant to the published edge table.

    Results are sorted by residual; ties keep enumeration order.
    """
    mesh = make_tetrahedron(scale)
    configs = all_configs() if configs is None else configs
    traces = {}
    target = _flat(CONTROL_ROWS_TABLE)
    results = []
    for cfg in configs:
        key = cfg.weights_variant
        if key not in traces or traces[key].levels < cfg.steps:
            traces[key] = ds_refine(mesh, 3, key)
        c = build_complex(traces[key], cfg)
        data = extract_edge_data(c, counterexample_edge(c, mesh))
        s, res = fit_to_table(_flat((data.row_p1, data.row_b, data.row_q2)), target)
        quality = "ExactProportional" if res == 0 and s is not None else "Mismatch"
        results.append(SearchResult(cfg, quality, res, s))
    order = sorted(range(len(results)), key=lambda k: (results[k].residual, k))
    return [results[k] for k in order]


# -- reproduction -------------------------------------------------------------


@dataclass(frozen=True)
class TableCheck:
    name: str
    computed: list[int]
    expected: list[int]

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def line(self) -> str:
        return f"{self.name}: {'PASS' if self.passed else 'FAIL'}"


@dataclass
class ReproReport:
    path: str
    edge: EdgeData
    checks: list[TableCheck] = field(default_factory=list)
    verdict: Verdict | None = None
    det_primitive: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "checks": {c.name: {"pass": c.passed, "computed": c.computed, "expected": c.expected}
                       for c in self.checks},
            "verdict": self.verdict.value if self.verdict else None,
            "det_primitive": list(self.det_primitive),
        }


def _check_edge(path: str, e: EdgeData, with_table: bool) -> ReproReport:
    rep = ReproReport(path, e)
    if with_table:
        _, got = primitive_vector(_flat((e.row_p1, e.row_b, e.row_q2)))
        _, want = primitive_vector(_flat(CONTROL_ROWS_TABLE))
        rep.checks.append(TableCheck("control rows", got, want))
    dp2, dp1, dq2 = edge_derivatives(e)
    _, got = primitive_vector(_flat([v.control_points() for v in (dp2, dp1, dq2)]))
    _, want = primitive_vector(_flat(DERIVATIVE_ROWS_TABLE))
    rep.checks.append(TableCheck("derivative rows", got, want))
    g = g1_necessary_test(e)
    rep.checks.append(TableCheck("determinant", list(g.det_primitive), list(DETERMINANT_TABLE)))
    rep.verdict = g.verdict
    rep.det_primitive = g.det_primitive
    return rep


def reproduce(scale=TETRA_SCALE, config: ConstructionConfig | None = None) -> tuple[ReproReport, ReproReport]:
    """Run the published table through the G1 test, then the full pipeline.

    The fixture path uses only the exact polynomial algebra and the G1 test;
    the pipeline path refines the scaled tetrahedron and builds the complex.
    """
    fixture = _check_edge("fixture", table_edge_data(), with_table=False)
    config = config or DEFAULT_CONFIG
    mesh = make_tetrahedron(scale)
    c = build_complex(ds_refine(mesh, config.steps, config.weights_variant), config)
    pipeline = _check_edge("pipeline", extract_edge_data(c, counterexample_edge(c, mesh)), with_table=True)
    return fixture, pipeline


# -- obstacle course ------------------------------------------------------------


@dataclass(frozen=True)
class CourseRow:
    name: str
    ok: bool
    error: str = ""
    patches: int = 0
    edges: int = 0
    g1: int = 0
    not_g1: int = 0
    degenerate: int = 0
    worst_det: int = 0
    max_normal_jump: float = 0.0
    parse_error: bool = False

    def to_dict(self) -> dict:
        return dict(self.__dict__)


COURSE_SAMPLES = 33


def _course_one(path: Path, config: ConstructionConfig) -> CourseRow:
    try:
        mesh = read_mesh(path)
    except (MeshError, ValueError, OSError) as exc:
        return CourseRow(path.name, False, str(exc), parse_error=True)
    try:
        c = build_complex(ds_refine(mesh, config.steps, config.weights_variant), config)
    except (MeshError, ValueError) as exc:
        return CourseRow(path.name, False, str(exc))
    reports = check_complex(c)
    counts = summarize(reports)
    worst = max((max(abs(i) for i in r.det_primitive) for r in reports), default=0)
    jump = max(
        (normal_jump(extract_edge_data(c, k), COURSE_SAMPLES).max_angle for k in range(len(reports))),
        default=0.0,
    )
    return CourseRow(
        path.name, True, "", len(c.patches), len(reports),
        counts["G1"], counts["NotG1"], counts["Degenerate"], worst, jump,
    )


def run_course(corpus, config: ConstructionConfig | None = None) -> list[CourseRow]:
    """Build and check every ``.obj``/``.off`` mesh in ``corpus``, sorted by name."""
    config = config or DEFAULT_CONFIG
    files = sorted(p for p in Path(corpus).iterdir() if p.suffix.lower() in (".obj", ".off"))
    return [_course_one(p, config) for p in files]


_TSV_FIELDS = ("name", "ok", "patches", "edges", "g1", "not_g1", "degenerate",
               "worst_det", "max_normal_jump", "error")


def course_tsv(rows: list[CourseRow]) -> str:
    lines = ["\t".join(_TSV_FIELDS)]
    for r in rows:
        vals = []
        for f in _TSV_FIELDS:
            v = getattr(r, f)
            vals.append(f"{v:.12e}" if isinstance(v, float) else str(v).replace("\t", " "))
        lines.append("\t".join(vals))
    return "\n".join(lines) + "\n"


def course_json(rows: list[CourseRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=1, sort_keys=True) + "\n"
