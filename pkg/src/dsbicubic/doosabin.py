"""Doo-Sabin subdivision with exact weights, face lineage and limit points.

New faces after one step are ordered: one per old face (same index), then
one per old vertex (``F + v``), then one per old edge (``F + V + e``).
Because a face keeps its index under the face-to-face rule, any face of
level ``t >= 1`` has the same index at every later level, with corner
``i`` mapping to corner ``i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .mesh import Mesh, MeshError, Point, face_centroid

__all__ = [
    "Variant",
    "LimitMethod",
    "DSWeights",
    "ds_weights",
    "ds_step",
    "ds_refine",
    "face_limit_point",
    "RefinementTrace",
    "BoundaryError",
    "IrrationalWeightsError",
]


class Variant(str, enum.Enum):
    CLASSICAL = "classical"
    MIDPOINT_AVERAGE = "midpoint-average"


class LimitMethod(str, enum.Enum):
    EIGEN_EXTRAPOLATE = "eigen"
    CENTROID = "centroid"


class BoundaryError(MeshError):
    pass


class IrrationalWeightsError(ValueError):
    pass


# cos(2*pi*p/q) for the reduced fractions p/q where it is rational
_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 6): Fraction(1, 2),
    Fraction(1, 4): Fraction(0),
    Fraction(1, 3): Fraction(-1, 2),
    Fraction(1, 2): Fraction(-1),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(3, 4): Fraction(0),
    Fraction(5, 6): Fraction(1, 2),
}


def _cos_turns(k: int, n: int) -> Fraction:
    key = Fraction(k % n, n)
    try:
        return _RATIONAL_COS[key]
    except KeyError:
        raise IrrationalWeightsError(
            f"classical Doo-Sabin weights for {n}-gons involve the irrational "
            f"cos(2*pi*{k}/{n}); use the midpoint-average variant"
        ) from None


def ds_weights(n: int, variant: Variant | str = Variant.CLASSICAL) -> tuple[Fraction, ...]:
    """Weights ``w[k]`` applied to the vertex ``k`` steps ahead of a corner.

    Classical: ``w[0] = (n + 5) / 4n``, ``w[k] = (3 + 2 cos(2 pi k / n)) / 4n``.
    Midpoint-average: the corner, its two edge midpoints and the centroid,
    averaged with equal weight.
    """
    if n < 3:
        raise ValueError(f"face degree must be at least 3, got {n}")
    variant = Variant(variant)
    if variant is Variant.CLASSICAL:
        w = [Fraction(n + 5, 4 * n)]
        w += [(3 + 2 * _cos_turns(k, n)) / (4 * n) for k in range(1, n)]
    else:
        w = [Fraction(1, 4 * n)] * n
        w[0] += Fraction(1, 2)
        w[1] += Fraction(1, 8)
        w[-1] += Fraction(1, 8)
    assert sum(w) == 1
    return tuple(w)


@dataclass(frozen=True)
class DSWeights:
    """Weight table for one variant, cached per face degree."""

    variant: Variant = Variant.CLASSICAL

    def __call__(self, n: int) -> tuple[Fraction, ...]:
        return ds_weights(n, self.variant)


def _combine(weights: Sequence[Fraction], points: Sequence[Point]) -> Point:
    return tuple(sum(w * p[k] for w, p in zip(weights, points)) for k in range(3))


def ds_step(m: Mesh, weights: DSWeights | Variant | str = Variant.CLASSICAL) -> Mesh:
    """One Doo-Sabin refinement of a closed mesh."""
    if not isinstance(weights, DSWeights):
        weights = DSWeights(Variant(weights))
    if not m.is_closed():
        a, b = m.boundary_edges()[0]
        raise BoundaryError(f"Doo-Sabin step needs a closed mesh; ({a}, {b}) is a boundary edge")
    P = m.vertices
    new_pts: list[Point] = []
    cache: dict[int, tuple[Fraction, ...]] = {}
    for f in m.faces:
        n = len(f)
        if n not in cache:
            cache[n] = weights(n)
        w = cache[n]
        pts = [P[v] for v in f]
        for i in range(n):
            new_pts.append(_combine(w, pts[i:] + pts[:i]))

    # new vertex for (face, corner) has the index of the half-edge leaving that corner
    faces: list[list[int]] = [
        [m.face_offset(fi) + i for i in range(len(f))] for fi, f in enumerate(m.faces)
    ]
    for v in range(len(P)):
        faces.append(m.vertex_halfedges(v))
    for h, t in m.edges:
        faces.append([m.he_next[h], h, m.he_next[t], t])
    return Mesh(new_pts, faces)


@dataclass(frozen=True)
class RefinementTrace:
    """Meshes of every level, ``meshes[0]`` being the input.

    ``face_lineage[f]`` lists, per level, the index of the face descending
    from level-1 face ``f`` (``None`` at level 0 for faces born from
    vertices and edges).
    """

    meshes: tuple[Mesh, ...]
    variant: Variant
    face_lineage: dict[int, tuple[int | None, ...]]

    @property
    def levels(self) -> int:
        return len(self.meshes) - 1

    @property
    def input(self) -> Mesh:
        return self.meshes[0]

    def source_of(self, face: int) -> tuple[str, int]:
        """Which input element a level-1 face was born from."""
        F, V = len(self.input.faces), len(self.input.vertices)
        if face < F:
            return "face", face
        if face < F + V:
            return "vertex", face - F
        if face < F + V + len(self.input.edges):
            return "edge", face - F - V
        raise IndexError(f"level-1 face {face} out of range")


def ds_refine(m: Mesh, k: int, weights: Variant | str = Variant.CLASSICAL) -> RefinementTrace:
    if k < 0:
        raise ValueError(f"refinement count must be non-negative, got {k}")
    variant = Variant(weights)
    meshes = [m]
    for _ in range(k):
        meshes.append(ds_step(meshes[-1], variant))
    lineage: dict[int, tuple[int | None, ...]] = {}
    if k >= 1:
        F = len(m.faces)
        for f in range(len(meshes[1].faces)):
            lineage[f] = (f if f < F else None,) + (f,) * k
    return RefinementTrace(tuple(meshes), variant, lineage)


def _solve_left_fixed_vector(S: list[list[Fraction]]) -> list[Fraction]:
    """Solve ``w S = w`` with ``sum(w) = 1`` by exact Gauss-Jordan."""
    n = len(S)
    # rows: (S^T - I) w = 0 plus the normalisation row
    A = [[S[j][i] - (1 if i == j else 0) for j in range(n)] + [Fraction(0)] for i in range(n)]
    A.append([Fraction(1)] * n + [Fraction(1)])
    rows, col_of = len(A), []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        col_of.append(c)
        r += 1
    if r < n:
        raise ArithmeticError("fixed vector of the face matrix is not unique")
    w = [Fraction(0)] * n
    for i, c in enumerate(col_of):
        w[c] = A[i][n]
    return w


def face_limit_point(
    trace: RefinementTrace,
    face: int,
    method: LimitMethod | str = LimitMethod.EIGEN_EXTRAPOLATE,
    level: int = 1,
) -> Point:
    """Point of the limit surface to which ``face`` (of ``level``) contracts.

    ``EIGEN_EXTRAPOLATE`` projects the face's corners with the dominant left
    eigenvector of the face-to-face subdivision matrix.  ``CENTROID`` takes
    the centroid of the descendant face at the deepest level in the trace.
    Level-0 faces are accepted too; they descend to level-1 face ``face``.
    """
    method = LimitMethod(method)
    if not 0 <= level <= trace.levels:
        raise ValueError(f"level {level} not in trace (0..{trace.levels})")
    mesh = trace.meshes[level]
    if not 0 <= face < len(mesh.faces):
        raise IndexError(f"unknown face {face} at level {level}")
    if method is LimitMethod.CENTROID:
        return face_centroid(trace.meshes[-1], face)
    n = len(mesh.faces[face])
    w = ds_weights(n, trace.variant)
    S = [[w[(j - i) % n] for j in range(n)] for i in range(n)]
    left = _solve_left_fixed_vector(S)
    return _combine(left, [mesh.vertices[v] for v in mesh.faces[face]])
