"""Doo-Sabin bi-cubic patch complexes with exact G1 verification."""

__all__ = [
    "BernsteinPoly",
    "VecPoly3",
    "bernstein_derivative",
    "bernstein_eval",
    "bernstein_mul",
    "normalize_primitive",
    "vecpoly_det3",
    "Mesh",
    "MeshStats",
    "face_centroid",
    "load_mesh",
    "make_tetrahedron",
    "save_mesh",
    "LimitMethod",
    "Variant",
    "ds_refine",
    "ds_step",
    "ds_weights",
    "face_limit_point",
    "BezierPatch",
    "ConstructionConfig",
    "CornerSource",
    "EdgeData",
    "PatchComplex",
    "build_complex",
    "construct",
    "eval_patch",
    "extract_edge_data",
    "tessellate",
    "G1Report",
    "NormalJumpReport",
    "Verdict",
    "check_complex",
    "edge_derivatives",
    "g1_necessary_test",
    "normal_jump",
    "unbiased_test",
]

__version__ = "0.1.0"

from .exact import (
    BernsteinPoly,
    VecPoly3,
    bernstein_derivative,
    bernstein_eval,
    bernstein_mul,
    normalize_primitive,
    vecpoly_det3,
)
from .mesh import Mesh, MeshStats, face_centroid, load_mesh, make_tetrahedron, save_mesh
from .doosabin import LimitMethod, Variant, ds_refine, ds_step, ds_weights, face_limit_point
from .patches import (
    BezierPatch,
    ConstructionConfig,
    CornerSource,
    EdgeData,
    PatchComplex,
    build_complex,
    construct,
    eval_patch,
    extract_edge_data,
    tessellate,
)
from .g1 import (
    G1Report,
    NormalJumpReport,
    Verdict,
    check_complex,
    edge_derivatives,
    g1_necessary_test,
    normal_jump,
    unbiased_test,
)
