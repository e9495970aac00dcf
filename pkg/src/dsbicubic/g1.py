"""Tangent-plane (G1) continuity tests across shared patch edges.

Both patches are parameterised so that their shared boundary is ``v = 0``;
the unbiased constraint then reads

    d2p(u) + d2q(u) = alpha(u) * d1p(u).

Here ``d2q`` is stored with the opposite sign (pointing from ``q`` into
``p``, like ``d2p``), so the same constraint is checked as
``(d2p - d2q) x d1p == 0`` and a C1 join has ``d2p == d2q``.  Either way it
forces ``|d2p, d1p, d2q| == 0``, a degree-8 polynomial computed exactly: a
nonzero coefficient proves the patches do not share a tangent plane.
"""

from __future__ import annotations

import enum
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import (
    BernsteinPoly,
    VecPoly3,
    normalize_primitive,
    vecpoly_cross,
    vecpoly_det3,
)
from .patches import BezierPatch, ComplexError, EdgeData, PatchComplex, extract_edge_data

__all__ = [
    "Verdict",
    "G1Report",
    "NormalJumpReport",
    "edge_derivatives",
    "g1_necessary_test",
    "unbiased_test",
    "normal_jump",
    "normal_jump_patches",
    "check_complex",
    "summarize",
    "gate_exit_code",
    "limit_edge_segments",
]

# exact sample parameters used to confirm the boundary tangent never vanishes
_REGULARITY_SAMPLES = tuple(Fraction(k, 16) for k in range(17))


class Verdict(str, enum.Enum):
    G1 = "G1"
    NOT_G1 = "NotG1"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class G1Report:
    edge_id: int | None
    mode: str
    det_poly: BernsteinPoly
    det_scale: Fraction
    det_primitive: tuple[int, ...]
    is_coplanar: bool
    unbiased_ok: bool
    regular: bool
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "edge_id": self.edge_id,
            "mode": self.mode,
            "verdict_basis": "necessary-condition" if self.mode == "necessary" else "unbiased",
            "det_poly": [f"{c.numerator}/{c.denominator}" for c in self.det_poly.coeffs],
            "det_scale": f"{self.det_scale.numerator}/{self.det_scale.denominator}",
            "det_primitive": list(self.det_primitive),
            "is_coplanar": self.is_coplanar,
            "unbiased_ok": self.unbiased_ok,
            "regular": self.regular,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class NormalJumpReport:
    edge_id: int | None
    samples: int
    max_angle: float
    angle_profile: list[tuple[float, float]]
    degenerate_samples: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "edge_id": self.edge_id,
            "samples": self.samples,
            "max_angle": self.max_angle,
            "angle_profile": [list(p) for p in self.angle_profile],
            "degenerate_samples": self.degenerate_samples,
        }


def _diff_rows(a, b) -> VecPoly3:
    return VecPoly3.from_points([[3 * (x - y) for x, y in zip(p, q)] for p, q in zip(a, b)])


def edge_derivatives(e: EdgeData) -> tuple[VecPoly3, VecPoly3, VecPoly3]:
    """Cross derivative of p, derivative along the edge, cross derivative of q.

    Both cross derivatives point from the ``q`` side toward the ``p`` side,
    i.e. ``d2q`` is built from ``q_i3 - q_i2``.  Degrees are (3, 2, 3).
    """
    dp2 = _diff_rows(e.row_p1, e.row_b)
    dq2 = _diff_rows(e.row_b, e.row_q2)
    dp1 = VecPoly3.from_points(e.row_b).derivative()
    return dp2, dp1, dq2


def _is_regular(dp1: VecPoly3) -> bool:
    pts = dp1.control_points()
    ref = next((p for p in pts if any(p)), None)
    if ref is None:
        return False
    # collinear derivative coefficients mean a straight boundary segment
    if all(not any(_cross(ref, p)) for p in pts):
        return False
    return all(any(dp1(t)) for t in _REGULARITY_SAMPLES)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _report(e: EdgeData, mode: str, edge_id: int | None) -> G1Report:
    dp2, dp1, dq2 = edge_derivatives(e)
    det = vecpoly_det3(dp2, dp1, dq2)
    scale, ints = normalize_primitive(det)
    coplanar = det.is_zero()
    unbiased = vecpoly_cross(dp2 - dq2, dp1).is_zero()
    regular = _is_regular(dp1)
    ok = coplanar if mode == "necessary" else unbiased
    if not regular:
        verdict = Verdict.DEGENERATE
    elif ok:
        verdict = Verdict.G1
    else:
        verdict = Verdict.NOT_G1
    return G1Report(edge_id, mode, det, scale, tuple(ints), coplanar, unbiased, regular, verdict)


def g1_necessary_test(e: EdgeData, edge_id: int | None = None) -> G1Report:
    """Verdict from the triple-product condition ``|d2p, d1p, d2q| == 0``.

    A G1 verdict here is necessary-condition only; the report also carries
    whether the symmetric constraint itself holds.
    """
    return _report(e, "necessary", edge_id)


def unbiased_test(e: EdgeData, edge_id: int | None = None) -> G1Report:
    """Verdict from ``(d2p - d2q) x d1p == 0`` identically (stored orientation)."""
    return _report(e, "unbiased", edge_id)


def _bernstein_matrix(n: int, us: np.ndarray) -> np.ndarray:
    k = np.arange(n + 1)
    binom = np.array([math.comb(n, i) for i in k], dtype=float)
    return binom * us[:, None] ** k * (1 - us[:, None]) ** (n - k)


def normal_jump(e: EdgeData, samples: int, edge_id: int | None = None) -> NormalJumpReport:
    """Angle between the two unit normals at ``samples + 1`` points ``u = k/samples``.

    Grids for ``s`` and ``2s`` nest, so refining never lowers ``max_angle``.
    Samples where either normal vanishes are skipped with a warning.
    """
    if samples < 2:
        raise ValueError("normal_jump needs samples >= 2")
    dp2, dp1, dq2 = edge_derivatives(e)
    us = np.arange(samples + 1) / samples

    def sample(vp: VecPoly3) -> np.ndarray:
        ctrl = np.array([[float(c) for c in p] for p in vp.control_points()])
        return _bernstein_matrix(vp.degree, us) @ ctrl

    t, a, b = sample(dp1), sample(dp2), sample(dq2)
    n_p, n_q = np.cross(t, a), np.cross(t, b)
    profile, bad = [], []
    for k, u in enumerate(us):
        lp, lq = np.linalg.norm(n_p[k]), np.linalg.norm(n_q[k])
        if lp == 0.0 or lq == 0.0:
            bad.append(float(u))
            continue
        ang = math.atan2(np.linalg.norm(np.cross(n_p[k], n_q[k])), float(n_p[k] @ n_q[k]))
        profile.append((float(u), ang))
    if bad:
        warnings.warn(f"normal undefined at u = {bad}; excluded from the maximum", stacklevel=2)
    max_angle = max((a for _, a in profile), default=0.0)
    return NormalJumpReport(edge_id, samples, max_angle, profile, bad)


def normal_jump_patches(
    pa: BezierPatch, side_a: int, pb: BezierPatch, side_b: int, samples: int
) -> NormalJumpReport:
    """Normal jump between two patches along ``side_a`` / ``side_b``.

    The sides must carry the same boundary curve, in either direction.
    """
    ba, ia = pa.side_rows(side_a)
    bb, ib = pb.side_rows(side_b)
    if ba == bb[::-1]:
        bb, ib = bb[::-1], ib[::-1]
    elif ba != bb:
        raise ComplexError("patches are not C0 along the given sides")
    return normal_jump(EdgeData(ia, ba, ib), samples)


def check_complex(c: PatchComplex, mode: str = "necessary") -> list[G1Report]:
    if mode not in ("necessary", "unbiased"):
        raise ValueError(f"unknown mode {mode!r}")
    return [_report(extract_edge_data(c, k), mode, k) for k in range(len(c.shared_edges))]


def summarize(reports: list[G1Report]) -> dict[str, int]:
    counts = Counter(r.verdict.value for r in reports)
    return {v.value: counts.get(v.value, 0) for v in Verdict}


def gate_exit_code(reports: list[G1Report]) -> int:
    """0 if every edge is G1, 1 if any is NotG1, otherwise 3 for Degenerate."""
    verdicts = {r.verdict for r in reports}
    if Verdict.NOT_G1 in verdicts:
        return 1
    if Verdict.DEGENERATE in verdicts:
        return 3
    return 0


def limit_edge_segments(c: PatchComplex) -> dict[int, int]:
    """Polynomial pieces on the boundary curve between two face limit points.

    Keyed by input edge.  A value below 3 means the curve has fewer than the
    two interior double knots that a general bi-3 G1 construction of this
    kind needs, so exact G1 cannot be expected on generic input.
    """
    kind = {k: m.get("kind") for k, m in c.corner_map.items()}
    nbrs: dict[int, set[int]] = {}
    for e in c.shared_edges:
        a, b = e.corners
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)
    out = {}
    for cid, k in kind.items():
        if k == "edge":
            faces = [n for n in nbrs.get(cid, ()) if kind.get(n) == "face"]
            if len(faces) == 2:
                out[c.corner_map[cid]["index"]] = 2
    return dict(sorted(out.items()))
