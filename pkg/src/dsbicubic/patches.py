"""Bi-cubic Bézier patches and patch complexes built from Doo-Sabin meshes.

Patch conventions
-----------------
``coeffs[i][j]`` is the control point for ``B_i(u) B_j(v)``.  The corners
``c0..c3`` sit at ``(0,0), (3,0), (3,3), (0,3)`` and run counter-clockwise
seen from outside, so ``d/du x d/dv`` points outward.  Side ``s`` runs from
corner ``s`` to corner ``s + 1`` with the patch interior on its left.

Layouts
-------
``LEVEL1_FACETS``
    One patch per vertex of the once-refined mesh (every such vertex has
    valence 4).  Its corners are the limit points of the four level-1
    facets around the vertex, so every input face, vertex and edge owns a
    corner; the edge corners are the split points between face corners.
``INPUT_FACES_AND_VERTICES``
    One patch per input edge, spanning the two adjacent input faces and the
    two end vertices; no split points.

Away from its corner ``L`` each 2x2 corner block of the control net is
``L + beta * (Q - L)`` where ``Q`` is a point of the detail level (level
``steps``) of the facet owning the corner: the facet's own corner for the
interior point and an edge midpoint for the boundary points (the roles
swap in the input-edge layout).  ``beta`` comes from the interior rule.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .doosabin import LimitMethod, RefinementTrace, Variant, ds_refine, face_limit_point
from .exact import BernsteinPoly, as_exact, bernstein_eval
from .mesh import Mesh, Point

__all__ = [
    "BezierPatch",
    "PatchComplex",
    "SharedEdge",
    "EdgeData",
    "CornerSource",
    "ConstructionConfig",
    "INTERIOR_RULES",
    "build_complex",
    "construct",
    "extract_edge_data",
    "eval_patch",
    "tessellate",
    "split_patch",
    "split_patch_complex",
    "complex_to_json",
    "complex_from_json",
    "ComplexError",
]

JSON_VERSION = 1


class ComplexError(ValueError):
    pass


class CornerSource(str, enum.Enum):
    LEVEL1_FACETS = "level1"
    INPUT_FACES_AND_VERTICES = "input"


#: interior rule id -> blend factor toward the detail-level point
INTERIOR_RULES: dict[str, Fraction] = {
    "midway": Fraction(1, 2),
    "two-thirds": Fraction(2, 3),
    "direct": Fraction(1),
}


@dataclass(frozen=True)
class ConstructionConfig:
    steps: int = 2
    weights_variant: Variant = Variant.CLASSICAL
    limit_method: LimitMethod = LimitMethod.EIGEN_EXTRAPOLATE
    corner_source: CornerSource = CornerSource.LEVEL1_FACETS
    interior_rule: str = "midway"

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps}")
        object.__setattr__(self, "weights_variant", Variant(self.weights_variant))
        object.__setattr__(self, "limit_method", LimitMethod(self.limit_method))
        object.__setattr__(self, "corner_source", CornerSource(self.corner_source))
        if self.interior_rule not in INTERIOR_RULES:
            raise ValueError(
                f"unknown interior rule {self.interior_rule!r}; "
                f"choose from {sorted(INTERIOR_RULES)}"
            )

    def label(self) -> str:
        return (
            f"steps={self.steps} weights={self.weights_variant.value} "
            f"limit={self.limit_method.value} corners={self.corner_source.value} "
            f"rule={self.interior_rule}"
        )

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "weights_variant": self.weights_variant.value,
            "limit_method": self.limit_method.value,
            "corner_source": self.corner_source.value,
            "interior_rule": self.interior_rule,
        }


def _pt(p) -> Point:
    return tuple(as_exact(c) for c in p)


def _lerp(a: Point, b: Point, t: Fraction) -> Point:
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def _mid(a: Point, b: Point) -> Point:
    return _lerp(a, b, Fraction(1, 2))


def _sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True)
class BezierPatch:
    coeffs: tuple[tuple[Point, ...], ...]

    def __init__(self, coeffs: Sequence[Sequence[Sequence]]):
        grid = tuple(tuple(_pt(p) for p in row) for row in coeffs)
        if len(grid) != 4 or any(len(row) != 4 for row in grid):
            raise ValueError("a bi-cubic patch needs a 4x4 control grid")
        object.__setattr__(self, "coeffs", grid)

    def __getitem__(self, ij) -> Point:
        i, j = ij
        return self.coeffs[i][j]

    def corner(self, k: int) -> Point:
        i, j = ((0, 0), (3, 0), (3, 3), (0, 3))[k % 4]
        return self.coeffs[i][j]

    def side_rows(self, s: int) -> tuple[list[Point], list[Point]]:
        """Boundary row of side ``s`` and the row next to it, in traversal order."""
        P = self.coeffs
        s %= 4
        if s == 0:
            return [P[i][0] for i in range(4)], [P[i][1] for i in range(4)]
        if s == 1:
            return [P[3][j] for j in range(4)], [P[2][j] for j in range(4)]
        if s == 2:
            return [P[i][3] for i in (3, 2, 1, 0)], [P[i][2] for i in (3, 2, 1, 0)]
        return [P[0][j] for j in (3, 2, 1, 0)], [P[1][j] for j in (3, 2, 1, 0)]

    def rotated(self, k: int = 1) -> BezierPatch:
        """Relabel corners so that old corner ``k`` becomes ``c0``."""
        P = self.coeffs
        for _ in range(k % 4):
            P = tuple(tuple(P[3 - j][i] for j in range(4)) for i in range(4))
        return BezierPatch(P)

    def is_degenerate(self) -> bool:
        """True when all control points are collinear (zero-area patch)."""
        pts = [p for row in self.coeffs for p in row]
        base = pts[0]
        d = next((_sub(p, base) for p in pts if p != base), None)
        if d is None:
            return True
        return all(not any(_cross(d, _sub(p, base))) for p in pts)


def eval_patch(p: BezierPatch, u, v) -> Point:
    """Exact value of the tensor-product patch at ``(u, v)``."""
    u, v = as_exact(u), as_exact(v)
    cols = []
    for i in range(4):
        cols.append(tuple(
            bernstein_eval(BernsteinPoly(p.coeffs[i][j][k] for j in range(4)), v)
            for k in range(3)
        ))
    return tuple(
        bernstein_eval(BernsteinPoly(cols[i][k] for i in range(4)), u) for k in range(3)
    )


@dataclass(frozen=True)
class SharedEdge:
    """Interior edge of a complex, directed from the lower corner id.

    ``patch_a`` traverses the edge in that direction along its ``side_a``
    (the patch lies on the left); ``patch_b`` along ``side_b``.
    ``orientation_flip`` is True when ``patch_b`` runs the other way, which
    is the case in every consistently oriented complex.
    """

    patch_a: int
    side_a: int
    patch_b: int
    side_b: int
    orientation_flip: bool
    corners: tuple[int, int]


@dataclass(frozen=True)
class EdgeData:
    """The three control rows that govern continuity across one edge.

    ``row_b`` is the shared boundary (``p_i0 == q_i3``), ``row_p1`` the next
    row inside ``p`` and ``row_q2`` the next row inside ``q``; all run in the
    same boundary direction.
    """

    row_p1: tuple[Point, ...]
    row_b: tuple[Point, ...]
    row_q2: tuple[Point, ...]

    def __init__(self, row_p1, row_b, row_q2):
        rows = [tuple(_pt(p) for p in r) for r in (row_p1, row_b, row_q2)]
        if any(len(r) != 4 for r in rows):
            raise ValueError("each EdgeData row needs exactly four points")
        object.__setattr__(self, "row_p1", rows[0])
        object.__setattr__(self, "row_b", rows[1])
        object.__setattr__(self, "row_q2", rows[2])

    def reversed(self) -> EdgeData:
        """Same edge seen from ``q``: rows reversed, ``p`` and ``q`` swapped."""
        return EdgeData(self.row_q2[::-1], self.row_b[::-1], self.row_p1[::-1])

    def points(self) -> list[Point]:
        return [*self.row_p1, *self.row_b, *self.row_q2]

    def transformed(self, matrix, offset=(0, 0, 0)) -> EdgeData:
        M = [[as_exact(c) for c in row] for row in matrix]
        t = [as_exact(c) for c in offset]

        def f(p):
            return tuple(sum(M[r][k] * p[k] for k in range(3)) + t[r] for r in range(3))

        return EdgeData(*([f(p) for p in row] for row in (self.row_p1, self.row_b, self.row_q2)))


@dataclass
class PatchComplex:
    patches: list[BezierPatch]
    corners: list[tuple[int, int, int, int]]
    shared_edges: list[SharedEdge]
    corner_map: dict[int, dict] = field(default_factory=dict)
    config: ConstructionConfig | None = None

    @classmethod
    def from_patches(
        cls,
        patches: Sequence[BezierPatch],
        corners: Sequence[Sequence[int]],
        corner_map: dict[int, dict] | None = None,
        config: ConstructionConfig | None = None,
    ) -> PatchComplex:
        """Derive shared edges from the corner ids of each patch."""
        if len(patches) != len(corners):
            raise ComplexError("need one corner-id quadruple per patch")
        sides: dict[frozenset, list[tuple[int, int, tuple[int, int]]]] = {}
        for pi, cs in enumerate(corners):
            if len(cs) != 4:
                raise ComplexError(f"patch {pi} needs four corner ids")
            for s in range(4):
                a, b = cs[s], cs[(s + 1) % 4]
                sides.setdefault(frozenset((a, b)), []).append((pi, s, (a, b)))
        edges = []
        for key in sorted(sides, key=lambda k: tuple(sorted(k))):
            users = sides[key]
            if len(users) == 1:
                continue
            if len(users) > 2:
                lo, hi = sorted(key)
                raise ComplexError(f"corner pair ({lo}, {hi}) is shared by {len(users)} patches")
            lo, hi = sorted(key)
            (pa, sa, da), (pb, sb, db) = users
            flip = da != db
            if flip and da != (lo, hi):
                (pa, sa, da), (pb, sb, db) = (pb, sb, db), (pa, sa, da)
            edges.append(SharedEdge(pa, sa, pb, sb, flip, (lo, hi)))
        cmap = corner_map if corner_map is not None else {
            c: {"kind": "point", "index": c} for cs in corners for c in cs
        }
        return cls(list(patches), [tuple(c) for c in corners], edges, dict(sorted(cmap.items())), config)

    # -- checks -----------------------------------------------------------

    def c0_violations(self) -> list[int]:
        bad = []
        for k, e in enumerate(self.shared_edges):
            ra, _ = self.patches[e.patch_a].side_rows(e.side_a)
            rb, _ = self.patches[e.patch_b].side_rows(e.side_b)
            if ra != (rb[::-1] if e.orientation_flip else rb):
                bad.append(k)
        return bad

    def corner_violations(self) -> list[int]:
        """Corner ids at which incident patches disagree."""
        seen: dict[int, Point] = {}
        bad = set()
        for p, cs in zip(self.patches, self.corners):
            for k, c in enumerate(cs):
                if seen.setdefault(c, p.corner(k)) != p.corner(k):
                    bad.add(c)
        return sorted(bad)

    def degenerate_patches(self) -> list[int]:
        return [i for i, p in enumerate(self.patches) if p.is_degenerate()]

    def spokes(self, corner_id: int) -> list[Point]:
        """First control-point offsets along each edge leaving a corner, CCW."""
        out = []
        for p, cs in zip(self.patches, self.corners):
            for k, c in enumerate(cs):
                if c == corner_id:
                    ahead, _ = p.rotated(k).side_rows(0)
                    out.append(_sub(ahead[1], ahead[0]))
        return out

    def split_point_c1(self) -> dict[int, bool]:
        """Whether the four patches at each split point join C1 there.

        At a 4-valent corner this holds when opposite spokes are negatives
        of each other.  Returns a flag per split-point corner (corners of
        kind ``"edge"``, or every 4-valent corner if the map has no kinds).
        """
        kinds = {c: m.get("kind") for c, m in self.corner_map.items()}
        targets = [c for c, k in kinds.items() if k == "edge"]
        if not targets:
            count: dict[int, int] = {}
            for cs in self.corners:
                for c in cs:
                    count[c] = count.get(c, 0) + 1
            targets = [c for c, n in sorted(count.items()) if n == 4]
        flags = {}
        for c in targets:
            s = self._ordered_spokes(c)
            flags[c] = s is not None and len(s) == 4 and all(
                s[k] == tuple(-x for x in s[k + 2]) for k in range(2)
            )
        return flags

    def _ordered_spokes(self, corner_id: int) -> list[Point] | None:
        # walk the fan: each patch contributes the spoke along the side leaving the corner
        nxt: dict[int, tuple[int, Point]] = {}
        for p, cs in zip(self.patches, self.corners):
            for k, c in enumerate(cs):
                if c == corner_id:
                    ahead, _ = p.rotated(k).side_rows(0)
                    nxt[cs[(k + 1) % 4]] = (cs[(k + 3) % 4], _sub(ahead[1], ahead[0]))
        if not nxt:
            return None
        start = min(nxt)
        order, cur = [], start
        for _ in range(len(nxt)):
            if cur not in nxt:
                return None
            prev, spoke = nxt[cur]
            order.append(spoke)
            cur = prev
        return order if cur == start else None

    def edge_index(self, a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        for k, e in enumerate(self.shared_edges):
            if e.corners == key:
                return k
        raise KeyError(f"no shared edge between corners {a} and {b}")

    def find_corner(self, kind: str, index: int) -> int:
        for c, m in self.corner_map.items():
            if m.get("kind") == kind and m.get("index") == index:
                return c
        raise KeyError(f"no corner for {kind} {index}")


def extract_edge_data(c: PatchComplex, edge_id: int, from_patch: str = "a") -> EdgeData:
    """Three control rows across a shared edge in canonical orientation.

    The boundary runs from the lower corner id to the higher one and ``p``
    is the patch on its left.  ``from_patch="b"`` returns the same edge
    with the other patch playing ``p``.
    """
    if not 0 <= edge_id < len(c.shared_edges):
        raise KeyError(f"unknown shared edge {edge_id}")
    e = c.shared_edges[edge_id]
    ba, ia = c.patches[e.patch_a].side_rows(e.side_a)
    bb, ib = c.patches[e.patch_b].side_rows(e.side_b)
    if e.orientation_flip:
        bb, ib = bb[::-1], ib[::-1]
    if ba != bb:
        raise ComplexError(f"shared edge {edge_id} is not C0")
    data = EdgeData(ia, ba, ib)
    return data.reversed() if from_patch == "b" else data


# -- construction ---------------------------------------------------------


# grid slots of a corner block: corner, toward next corner, toward previous, interior
_BLOCKS = (
    ((0, 0), (1, 0), (0, 1), (1, 1)),
    ((3, 0), (3, 1), (2, 0), (2, 1)),
    ((3, 3), (2, 3), (3, 2), (2, 2)),
    ((0, 3), (0, 2), (1, 3), (1, 2)),
)


def _assemble(blocks: Sequence[tuple[Point, Point, Point, Point]]) -> BezierPatch:
    grid = [[None] * 4 for _ in range(4)]
    for slots, pts in zip(_BLOCKS, blocks):
        for (i, j), p in zip(slots, pts):
            grid[i][j] = p
    return BezierPatch(grid)


def build_complex(trace: RefinementTrace, config: ConstructionConfig | None = None) -> PatchComplex:
    """Bi-cubic patch complex of a refinement trace.

    The trace must hold at least ``config.steps`` levels of a closed mesh.
    """
    config = config or ConstructionConfig()
    if trace.levels < config.steps:
        raise ComplexError(f"trace has {trace.levels} levels, construction needs {config.steps}")
    if trace.variant is not config.weights_variant:
        raise ComplexError("trace weights differ from the configured variant")
    if not trace.input.is_closed():
        raise ComplexError("construction needs a closed input mesh")
    if config.corner_source is CornerSource.LEVEL1_FACETS:
        return _build_level1(trace, config)
    return _build_input_edges(trace, config)


def _detail_point(trace: RefinementTrace, config: ConstructionConfig, face: int, corner: int) -> Point:
    md = trace.meshes[config.steps]
    f = md.faces[trace.face_lineage[face][config.steps]]
    return md.vertices[f[corner % len(f)]]


def _build_level1(trace: RefinementTrace, config: ConstructionConfig) -> PatchComplex:
    m1 = trace.meshes[1]
    beta = INTERIOR_RULES[config.interior_rule]
    limits = {}

    def limit(f):
        if f not in limits:
            limits[f] = face_limit_point(trace, f, config.limit_method, level=1)
        return limits[f]

    patches, corners = [], []
    for x in range(len(m1.vertices)):
        ring = m1.vertex_halfedges(x)
        if len(ring) != 4:
            raise ComplexError(f"level-1 vertex {x} has valence {len(ring)}, expected 4")
        blocks, ids = [], []
        for h in ring:
            f = m1.he_face[h]
            i = m1.corner_of(h)
            L = limit(f)
            P = lambda k: _detail_point(trace, config, f, k)  # noqa: E731
            blocks.append((
                L,
                _lerp(L, _mid(P(i), P(i - 1)), beta),
                _lerp(L, _mid(P(i), P(i + 1)), beta),
                _lerp(L, P(i), beta),
            ))
            ids.append(f)
        patches.append(_assemble(blocks))
        corners.append(tuple(ids))
    cmap = {}
    for f in range(len(m1.faces)):
        kind, idx = trace.source_of(f)
        cmap[f] = {"kind": kind, "index": idx}
    return PatchComplex.from_patches(patches, corners, cmap, config)


def _build_input_edges(trace: RefinementTrace, config: ConstructionConfig) -> PatchComplex:
    m0 = trace.meshes[0]
    F = len(m0.faces)
    beta = INTERIOR_RULES[config.interior_rule]

    def limit(f):
        return face_limit_point(trace, f, config.limit_method, level=1)

    def face_block(f, i_to_next, i_to_prev):
        L = limit(f)
        pn = _detail_point(trace, config, f, i_to_next)
        pp = _detail_point(trace, config, f, i_to_prev)
        return (L, _lerp(L, pn, beta), _lerp(L, pp, beta), _lerp(L, _mid(pn, pp), beta))

    def vertex_corner(v, h_out):
        # corner of the level-1 vertex facet that belongs to half-edge h_out
        return m0.vertex_halfedges(v).index(h_out)

    patches, corners = [], []
    for h, t in m0.edges:
        a, b = m0.he_origin[h], m0.he_origin[t]
        f1, f2 = m0.he_face[h], m0.he_face[t]
        ia, ib = m0.corner_of(h), m0.corner_of(t)
        va, vb = F + a, F + b
        jb1, jb2 = vertex_corner(b, m0.he_next[h]), vertex_corner(b, t)
        ja1, ja2 = vertex_corner(a, h), vertex_corner(a, m0.he_next[t])
        blocks = [
            face_block(vb, jb1, jb2),        # c0 = b: next is f1, previous f2
            face_block(f1, ia, ia + 1),      # c1 = f1: next is a, previous b
            face_block(va, ja2, ja1),        # c2 = a: next is f2, previous f1
            face_block(f2, ib, ib + 1),      # c3 = f2: next is b, previous a
        ]
        patches.append(_assemble(blocks))
        corners.append((vb, f1, va, f2))
    cmap = {f: {"kind": "face", "index": f} for f in range(F)}
    cmap.update({F + v: {"kind": "vertex", "index": v} for v in range(len(m0.vertices))})
    return PatchComplex.from_patches(patches, corners, cmap, config)


def construct(mesh: Mesh, config: ConstructionConfig | None = None) -> PatchComplex:
    """Refine ``mesh`` and build its patch complex in one call."""
    config = config or ConstructionConfig()
    trace = ds_refine(mesh, config.steps, config.weights_variant)
    return build_complex(trace, config)


# -- tessellation and fixtures ---------------------------------------------


def tessellate(c: PatchComplex, samples_per_side: int) -> Mesh:
    """Quad mesh sampling every patch on a uniform grid (not welded)."""
    s = samples_per_side
    if s < 1:
        raise ValueError("samples_per_side must be at least 1")
    verts: list[Point] = []
    faces = []
    for p in c.patches:
        base = len(verts)
        for j in range(s + 1):
            for i in range(s + 1):
                verts.append(eval_patch(p, Fraction(i, s), Fraction(j, s)))
        for j in range(s):
            for i in range(s):
                a = base + j * (s + 1) + i
                faces.append((a, a + 1, a + s + 2, a + s + 1))
    return Mesh(verts, faces)


def _split_curve(pts: Sequence[Point], t: Fraction) -> tuple[list[Point], list[Point]]:
    left, right = [pts[0]], [pts[-1]]
    cur = list(pts)
    while len(cur) > 1:
        cur = [_lerp(a, b, t) for a, b in zip(cur, cur[1:])]
        left.append(cur[0])
        right.append(cur[-1])
    return left, right[::-1]


def split_patch(p: BezierPatch, u=Fraction(1, 2), v=Fraction(1, 2)) -> list[BezierPatch]:
    """De Casteljau split into four patches, CCW from the ``(0, 0)`` quarter."""
    u, v = as_exact(u), as_exact(v)
    lo_u, hi_u = [], []
    for j in range(4):
        a, b = _split_curve([p.coeffs[i][j] for i in range(4)], u)
        lo_u.append(a)
        hi_u.append(b)
    quads = []
    for half in (lo_u, hi_u):
        # half[j][i]: split every u-column at v
        lo_v = [[None] * 4 for _ in range(4)]
        hi_v = [[None] * 4 for _ in range(4)]
        for i in range(4):
            a, b = _split_curve([half[j][i] for j in range(4)], v)
            for j in range(4):
                lo_v[i][j], hi_v[i][j] = a[j], b[j]
        quads.append((BezierPatch(lo_v), BezierPatch(hi_v)))
    (ll, lh), (hl, hh) = quads
    return [ll, hl, hh, lh]


def split_patch_complex(p: BezierPatch) -> PatchComplex:
    """Complex of the four quarters of one patch; every edge is C1."""
    parts = split_patch(p)
    # 3x3 grid of corner ids, id = 3 * row(v) + col(u)
    corners = [(0, 1, 4, 3), (1, 2, 5, 4), (4, 5, 8, 7), (3, 4, 7, 6)]
    cmap = {k: {"kind": "grid", "index": k} for k in range(9)}
    return PatchComplex.from_patches(parts, corners, cmap)


# -- serialization ----------------------------------------------------------


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def complex_to_json(c: PatchComplex) -> str:
    doc = {
        "version": JSON_VERSION,
        "config": c.config.to_dict() if c.config else None,
        "patches": [
            [[_frac(x) for x in patch.coeffs[i][j]] for j in range(4) for i in range(4)]
            for patch in c.patches
        ],
        "corners": [list(cs) for cs in c.corners],
        "shared_edges": [
            [e.patch_a, e.side_a, e.patch_b, e.side_b, e.orientation_flip] for e in c.shared_edges
        ],
        "corner_map": {str(k): v for k, v in c.corner_map.items()},
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def complex_from_json(text: str) -> PatchComplex:
    try:
        doc = json.loads(text)
        if doc.get("version") != JSON_VERSION:
            raise ComplexError(f"unsupported complex version {doc.get('version')!r}")
        patches = []
        for flat in doc["patches"]:
            if len(flat) != 16:
                raise ComplexError("each patch needs 16 control points")
            patches.append(BezierPatch(
                [[[Fraction(x) for x in flat[4 * j + i]] for j in range(4)] for i in range(4)]
            ))
        cmap = {int(k): v for k, v in doc.get("corner_map", {}).items()}
        cfg = ConstructionConfig(**doc["config"]) if doc.get("config") else None
        c = PatchComplex.from_patches(patches, doc["corners"], cmap, cfg)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ComplexError):
            raise
        raise ComplexError(f"malformed complex document: {exc}") from exc
    stored = [tuple(e) for e in doc.get("shared_edges", [])]
    derived = [(e.patch_a, e.side_a, e.patch_b, e.side_b, e.orientation_flip) for e in c.shared_edges]
    if stored and stored != derived:
        raise ComplexError("shared_edges disagree with the patch corner ids")
    return c
