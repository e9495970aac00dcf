"""Reference tables of the tetrahedron counterexample and small test fixtures.

The tables are the published integer values, each known only up to one
positive factor.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .patches import BezierPatch, EdgeData, PatchComplex

__all__ = [
    "TETRA_SCALE",
    "CONTROL_ROWS_TABLE",
    "DERIVATIVE_ROWS_TABLE",
    "DETERMINANT_TABLE",
    "table_edge_data",
    "mirror_edge_data",
    "random_rows",
    "mirror_patch_pair",
    "linear_boundary_complex",
    "flat_patch",
]

#: 2^2 * 3^2 * 5 * 7, the integer scale applied to the tetrahedron
TETRA_SCALE = 1260

#: p_i1, p_i0 = q_i3, q_i2 for i = 0..3 along the edge from v to m
CONTROL_ROWS_TABLE = (
    ((7, 10, 7), (10, 10, 4), (16, 4, -2), (16, 3, -3)),
    ((8, 8, 8), (10, 7, 7), (16, 1, 1), (16, 0, 0)),
    ((7, 7, 10), (10, 4, 10), (16, -2, 4), (16, -3, 3)),
)

#: coefficients of d2p (degree 3), d1p (degree 2), d2q (degree 3)
DERIVATIVE_ROWS_TABLE = (
    ((-1, 2, -1), (0, 3, -3), (0, 3, -3), (0, 3, -3)),
    ((2, -1, -1), (6, -6, -6), (0, -1, -1)),
    ((1, 1, -2), (0, 3, -3), (0, 3, -3), (0, 3, -3)),
)

#: primitive coefficients of |d2p, d1p, d2q|, degree 8
DETERMINANT_TABLE = (0, 105, 185, 105, 36, 5, 0, 0, 0)


def table_edge_data() -> EdgeData:
    return EdgeData(*CONTROL_ROWS_TABLE)


def random_rows(rng: random.Random, n: int = 4, lo: int = -20, hi: int = 20, den: int = 7):
    return [
        tuple(Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(3))
        for _ in range(n)
    ]


def mirror_edge_data(row_p1, row_b) -> EdgeData:
    """Edge whose far row mirrors the near row through the boundary (C1)."""
    q2 = [tuple(2 * b - a for a, b in zip(p, q)) for p, q in zip(row_p1, row_b)]
    return EdgeData(row_p1, row_b, q2)


def flat_patch(offset=(0, 0, 0), size=1) -> BezierPatch:
    """Bilinear-precision grid ``p_ij = offset + size * (i/3, j/3, 0)``."""
    ox, oy, oz = (Fraction(c) for c in offset)
    s = Fraction(size)
    return BezierPatch([
        [(ox + s * Fraction(i, 3), oy + s * Fraction(j, 3), oz) for j in range(4)]
        for i in range(4)
    ])


def mirror_patch_pair(p: BezierPatch) -> tuple[BezierPatch, BezierPatch]:
    """``p`` and its C1 continuation across the ``v = 0`` side.

    The continuation is the ``v < 0`` part of the same polynomial, so the
    pair is C1 along the whole shared side.  Its corners run
    counter-clockwise like ``p``'s.
    """
    q = []
    for i in range(4):
        col = [p.coeffs[i][j] for j in range(4)]
        # reparameterise v -> v - 1 on [0, 1]: extrapolate to [-1, 0]
        q.append(_extrapolate(col))
    return p, BezierPatch(q)


def _extrapolate(col):
    # control points of the cubic on [-1, 0], via de Casteljau at t = -1
    t = Fraction(-1)
    left = [col[0]]
    cur = list(col)
    while len(cur) > 1:
        cur = [tuple(a + t * (b - a) for a, b in zip(x, y)) for x, y in zip(cur, cur[1:])]
        left.append(cur[0])
    # left runs from col[0] (v=0) to the v=-1 end; reverse so index 0 is v=-1
    return left[::-1]


def linear_boundary_complex() -> PatchComplex:
    """Two patches whose shared side is a straight, evenly spaced segment."""
    base = flat_patch()
    lifted = BezierPatch([
        [(x, y, Fraction(i * j, 9) + Fraction(j * j, 9)) for (x, y, _), j in zip(base.coeffs[i], range(4))]
        for i in range(4)
    ])
    p, q = mirror_patch_pair(lifted)
    return PatchComplex.from_patches([p, q], [(0, 1, 2, 3), (4, 5, 1, 0)])
