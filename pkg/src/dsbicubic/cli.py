"""Command line interface: ``dsbicubic <command> ...``.

Exit codes: 0 success / all edges G1, 1 some edge NotG1, 2 bad input or
I/O failure, 3 some edge Degenerate (and none NotG1).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .doosabin import LimitMethod, Variant, ds_refine
from .exact import primitive_vector
from .g1 import (
    Verdict,
    check_complex,
    edge_derivatives,
    gate_exit_code,
    limit_edge_segments,
    normal_jump,
    summarize,
)
from .mesh import MeshError, read_mesh, save_mesh, write_mesh
from .patches import (
    INTERIOR_RULES,
    ComplexError,
    ConstructionConfig,
    CornerSource,
    build_complex,
    complex_from_json,
    complex_to_json,
    extract_edge_data,
    tessellate,
)
from .fixtures import TETRA_SCALE
from .repro import DEFAULT_CONFIG, SEARCH_TARGET, course_json, course_tsv, reproduce, run_course, search

EXIT_OK, EXIT_NOT_G1, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _add_config_args(p: argparse.ArgumentParser) -> None:
    d = DEFAULT_CONFIG
    p.add_argument("--steps", type=int, default=d.steps, help="Doo-Sabin steps (default %(default)s)")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=d.weights_variant.value)
    p.add_argument("--limit", choices=[m.value for m in LimitMethod], default=d.limit_method.value)
    p.add_argument("--corners", choices=[c.value for c in CornerSource], default=d.corner_source.value)
    p.add_argument("--rule", choices=list(INTERIOR_RULES), default=d.interior_rule)


def _config(args) -> ConstructionConfig:
    try:
        return ConstructionConfig(args.steps, args.variant, args.limit, args.corners, args.rule)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_complex(path: str):
    try:
        return complex_from_json(Path(path).read_text(encoding="utf-8"))
    except (OSError, ComplexError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _read_mesh(path: str):
    try:
        return read_mesh(path)
    except (OSError, MeshError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


# -- commands -----------------------------------------------------------------


def cmd_subdivide(args, out) -> int:
    mesh = _read_mesh(args.input)
    if args.steps < 0:
        raise InputError("--steps must be non-negative")
    try:
        trace = ds_refine(mesh, args.steps, args.variant)
    except (MeshError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    for level, m in enumerate(trace.meshes):
        _emit(f"level {level}: {m.stats().line()}", out)
    if args.output:
        try:
            write_mesh(trace.meshes[-1], args.output, args.format)
        except (OSError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    else:
        out.write(save_mesh(trace.meshes[-1], args.format or "obj").decode())
    return EXIT_OK


def cmd_construct(args, out) -> int:
    mesh = _read_mesh(args.input)
    cfg = _config(args)
    try:
        c = build_complex(ds_refine(mesh, cfg.steps, cfg.weights_variant), cfg)
    except (MeshError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit(f"config: {cfg.label()}", out)
    _emit(f"patches={len(c.patches)} shared_edges={len(c.shared_edges)} "
          f"c0_violations={len(c.c0_violations())} degenerate={len(c.degenerate_patches())}", out)
    flags = c.split_point_c1()
    if flags:
        _emit(f"split points C1: {sum(flags.values())}/{len(flags)}", out)
    segs = limit_edge_segments(c)
    if segs:
        _emit(f"segments between face limit points: {sorted(set(segs.values()))} "
              "(a general bi-3 G1 layout needs at least 3)", out)
    if args.tessellate and not args.tess_output:
        raise InputError("--tessellate needs --tess-output")
    try:
        if args.output:
            Path(args.output).write_text(complex_to_json(c), encoding="utf-8")
        if args.tessellate:
            write_mesh(tessellate(c, args.tessellate), args.tess_output)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_check_g1(args, out) -> int:
    c = _load_complex(args.complex)
    reports = check_complex(c, args.mode)
    if args.json:
        doc = {"mode": args.mode, "summary": summarize(reports),
               "edges": [r.to_dict() for r in reports]}
        _emit(json.dumps(doc, indent=1, sort_keys=True), out)
    else:
        basis = "necessary-condition" if args.mode == "necessary" else "unbiased"
        for r, e in zip(reports, c.shared_edges):
            a, b = e.corners
            _emit(f"edge {r.edge_id} ({a}->{b}): {r.verdict.value} "
                  f"det~{list(r.det_primitive)} unbiased={r.unbiased_ok}", out)
        s = summarize(reports)
        _emit(f"{basis} verdicts: " + " ".join(f"{k}={v}" for k, v in s.items()), out)
    return gate_exit_code(reports)


def cmd_normal_jump(args, out) -> int:
    c = _load_complex(args.complex)
    if args.samples < 2:
        raise InputError("--samples must be at least 2")
    ids = [args.edge] if args.edge is not None else range(len(c.shared_edges))
    reports = []
    for k in ids:
        if not 0 <= k < len(c.shared_edges):
            raise InputError(f"no shared edge {k}")
        reports.append(normal_jump(extract_edge_data(c, k), args.samples, edge_id=k))
    if args.json:
        _emit(json.dumps([r.to_dict() for r in reports], indent=1, sort_keys=True), out)
    else:
        for r in reports:
            _emit(f"edge {r.edge_id}: max_angle={r.max_angle:.6e} rad", out)
    return EXIT_OK


def _print_rows(title: str, rows, out) -> None:
    _emit(title, out)
    for row in rows:
        _emit("  " + "  ".join("[" + ", ".join(str(x) for x in p) + "]" for p in row), out)


def _positive_primitive(values) -> list[int]:
    # coprime integers under a positive scale, so signs read as computed
    scale, ints = primitive_vector(values)
    return [-i for i in ints] if scale < 0 else ints


def cmd_repro(args, out) -> int:
    try:
        scale = Fraction(args.scale)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --scale: {exc}") from exc
    fixture, pipeline = reproduce(scale, _config(args))
    if args.json:
        _emit(json.dumps({"fixture": fixture.to_dict(), "pipeline": pipeline.to_dict()},
                         indent=1, sort_keys=True), out)
    else:
        for rep in (fixture, pipeline):
            _emit(f"== {rep.path} path ==", out)
            e = rep.edge
            pts = [*e.row_p1, *e.row_b, *e.row_q2]
            ints = _positive_primitive([x for p in pts for x in p])
            trip = [tuple(ints[i:i + 3]) for i in range(0, len(ints), 3)]
            _print_rows("control rows p_i1 / p_i0 = q_i3 / q_i2 (primitive):",
                        [trip[0:4], trip[4:8], trip[8:12]], out)
            ders = edge_derivatives(e)
            flat = [x for v in ders for p in v.control_points() for x in p]
            ints = _positive_primitive(flat)
            trip = [tuple(ints[i:i + 3]) for i in range(0, len(ints), 3)]
            _print_rows("d2p / d1p / d2q (primitive):", [trip[0:4], trip[4:7], trip[7:11]], out)
            _emit(f"|d2p, d1p, d2q| ~ {list(rep.det_primitive)}", out)
            for chk in rep.checks:
                _emit(chk.line(), out)
            _emit(f"verdict: {rep.verdict.value}", out)
    if not fixture.passed:
        return EXIT_INPUT
    return {Verdict.G1: EXIT_OK, Verdict.NOT_G1: EXIT_NOT_G1}.get(fixture.verdict, EXIT_DEGENERATE)


def cmd_search(args, out) -> int:
    if args.target != SEARCH_TARGET:
        raise InputError(f"unknown target {args.target!r}")
    try:
        scale = Fraction(args.scale)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --scale: {exc}") from exc
    results = search(scale)
    if args.json:
        _emit(json.dumps([r.to_dict() for r in results], indent=1, sort_keys=True), out)
    else:
        for rank, r in enumerate(results, 1):
            _emit(f"{rank:3d}  {r.match_quality:17s}  residual={str(r.residual):>12s}  {r.config.label()}", out)
    return EXIT_OK


def cmd_course(args, out) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise InputError(f"{corpus} is not a directory")
    rows = run_course(corpus, _config(args))
    if args.tsv:
        Path(args.tsv).write_text(course_tsv(rows), encoding="utf-8")
    if args.json:
        _emit(course_json(rows), out)
    else:
        _emit(f"{'mesh':24s} {'ok':>3s} {'patches':>7s} {'edges':>5s} {'G1':>4s} {'NotG1':>5s} "
              f"{'Degen':>5s} {'worst|det|':>10s} {'max jump':>10s}", out)
        for r in rows:
            if r.ok:
                _emit(f"{r.name:24s} {'yes':>3s} {r.patches:7d} {r.edges:5d} {r.g1:4d} {r.not_g1:5d} "
                      f"{r.degenerate:5d} {r.worst_det:10d} {r.max_normal_jump:10.3e}", out)
            else:
                _emit(f"{r.name:24s} {'no':>3s}  {r.error}", out)
    return EXIT_INPUT if any(r.parse_error for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsbicubic",
        description="Doo-Sabin bi-cubic patch construction and exact G1 verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subdivide", help="refine a mesh and print statistics per level")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.CLASSICAL.value)
    p.add_argument("--format", choices=["obj", "off"])
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("construct", help="build a patch complex (JSON) from a mesh")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    _add_config_args(p)
    p.add_argument("--tessellate", type=int, default=0, metavar="N")
    p.add_argument("--tess-output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check-g1", help="exact G1 test of every shared edge")
    p.add_argument("complex")
    p.add_argument("--mode", choices=["necessary", "unbiased"], default="necessary")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_g1)

    p = sub.add_parser("normal-jump", help="sampled angle between normals across edges")
    p.add_argument("complex")
    p.add_argument("--edge", type=int)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_normal_jump)

    p = sub.add_parser("repro-counterexample", help="reproduce the tetrahedron counterexample tables")
    p.add_argument("--scale", default=str(TETRA_SCALE))
    _add_config_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("search", help="rank construction variants against the published table")
    p.add_argument("--target", default=SEARCH_TARGET)
    p.add_argument("--scale", default=str(TETRA_SCALE))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("course", help="batch-run a directory of meshes")
    p.add_argument("corpus")
    _add_config_args(p)
    p.add_argument("--tsv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_course)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
