"""Half-edge polyhedral meshes with exact rational coordinates.

Half-edges are numbered face by face: the half-edge leaving corner ``i`` of
face ``f`` has index ``face_offset(f) + i`` and runs from ``faces[f][i]`` to
``faces[f][i + 1]``.  Faces are counter-clockwise seen from outside.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exact import as_exact

__all__ = [
    "Mesh",
    "MeshStats",
    "MeshError",
    "MeshParseError",
    "NonManifoldError",
    "DegenerateFaceError",
    "OrientationError",
    "load_mesh",
    "save_mesh",
    "read_mesh",
    "write_mesh",
    "make_tetrahedron",
    "make_cube",
    "make_prism",
    "face_centroid",
    "TETRAHEDRON_VERTICES",
]

Point = tuple[Fraction, Fraction, Fraction]

#: A, B, C, D of the regular tetrahedron used by the counterexample.
TETRAHEDRON_VERTICES = ((-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))


class MeshError(ValueError):
    pass


class MeshParseError(MeshError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NonManifoldError(MeshError):
    pass


class DegenerateFaceError(MeshError):
    pass


class OrientationError(MeshError):
    pass


@dataclass(frozen=True)
class MeshStats:
    vertex_count: int
    edge_count: int
    face_count: int
    euler: int
    face_degree_histogram: dict[int, int] = field(default_factory=dict)
    vertex_valence_histogram: dict[int, int] = field(default_factory=dict)

    def line(self) -> str:
        return f"V={self.vertex_count} E={self.edge_count} F={self.face_count} euler={self.euler}"


class Mesh:
    """Immutable polygon mesh with derived half-edge connectivity.

    Parameters
    ----------
    vertices : sequence of 3-sequences
        Coordinates; anything :func:`~dsbicubic.exact.as_exact` accepts.
    faces : sequence of int sequences
        0-based vertex cycles, counter-clockwise from outside.

    Raises
    ------
    DegenerateFaceError
        Face with fewer than three corners or a repeated vertex.
    NonManifoldError
        A directed edge used twice (a third face on an edge, or two faces
        with clashing orientation), or a vertex whose fan is not a disk.
    OrientationError
        A closed mesh whose faces point inward.
    """

    def __init__(self, vertices: Sequence[Sequence], faces: Sequence[Sequence[int]]):
        self.vertices: tuple[Point, ...] = tuple(
            tuple(as_exact(c) for c in v) for v in vertices
        )
        for i, v in enumerate(self.vertices):
            if len(v) != 3:
                raise MeshError(f"vertex {i} has {len(v)} coordinates, expected 3")
        self.faces: tuple[tuple[int, ...], ...] = tuple(tuple(int(i) for i in f) for f in faces)
        self._build()

    def _build(self):
        nv = len(self.vertices)
        offsets = []
        origin, face_of = [], []
        n = 0
        for fi, f in enumerate(self.faces):
            if len(f) < 3:
                raise DegenerateFaceError(f"face {fi} has {len(f)} corners")
            if len(set(f)) != len(f):
                raise DegenerateFaceError(f"face {fi} repeats a vertex: {list(f)}")
            for v in f:
                if not 0 <= v < nv:
                    raise MeshError(f"face {fi} references vertex {v}, index out of range")
            offsets.append(n)
            origin.extend(f)
            face_of.extend([fi] * len(f))
            n += len(f)
        self._offsets = offsets
        self.he_origin = origin
        self.he_face = face_of
        self.he_next = [0] * n
        self.he_prev = [0] * n
        for fi, f in enumerate(self.faces):
            o, k = offsets[fi], len(f)
            for i in range(k):
                self.he_next[o + i] = o + (i + 1) % k
                self.he_prev[o + i] = o + (i - 1) % k

        directed: dict[tuple[int, int], int] = {}
        for h in range(n):
            key = (origin[h], origin[self.he_next[h]])
            if key in directed:
                a, b = key
                raise NonManifoldError(
                    f"edge ({a}, {b}) is traversed twice in the same direction "
                    f"(faces {face_of[directed[key]]} and {face_of[h]}): "
                    "non-manifold edge or inconsistent orientation"
                )
            directed[key] = h
        self.he_twin = [directed.get((origin[self.he_next[h]], origin[h]), -1) for h in range(n)]

        self.edges: list[tuple[int, int]] = []
        self.he_edge = [-1] * n
        for h in range(n):
            if self.he_edge[h] >= 0:
                continue
            t = self.he_twin[h]
            self.he_edge[h] = len(self.edges)
            if t >= 0:
                self.he_edge[t] = len(self.edges)
            self.edges.append((h, t))

        self.vertex_out: list[list[int]] = [[] for _ in range(nv)]
        for h in range(n):
            self.vertex_out[origin[h]].append(h)
        self._check_fans()
        if self.is_closed() and self.faces and self.signed_volume() < 0:
            raise OrientationError("closed mesh is oriented inward; reverse every face")

    def _check_fans(self):
        for v, outs in enumerate(self.vertex_out):
            if not outs:
                continue
            if any(self.he_twin[self.he_prev[h]] < 0 for h in outs):
                # boundary vertex: count fans by their clockwise-most half-edges
                starts = [h for h in outs if self.he_twin[h] < 0]
                if len(starts) > 1:
                    raise NonManifoldError(f"vertex {v} joins {len(starts)} separate fans")
                continue
            seen = {outs[0]}
            h = self.he_twin[self.he_prev[outs[0]]]
            while h != outs[0]:
                seen.add(h)
                h = self.he_twin[self.he_prev[h]]
            if len(seen) != len(outs):
                raise NonManifoldError(f"vertex {v} joins more than one fan of faces")

    # -- connectivity -----------------------------------------------------

    @property
    def halfedge_count(self) -> int:
        return len(self.he_origin)

    def face_offset(self, f: int) -> int:
        return self._offsets[f]

    def halfedge(self, f: int, corner: int) -> int:
        return self._offsets[f] + corner % len(self.faces[f])

    def corner_of(self, h: int) -> int:
        return h - self._offsets[self.he_face[h]]

    def he_dest(self, h: int) -> int:
        return self.he_origin[self.he_next[h]]

    def is_closed(self) -> bool:
        return all(t >= 0 for t in self.he_twin)

    def boundary_edges(self) -> list[tuple[int, int]]:
        return [(self.he_origin[h], self.he_dest(h)) for h, t in self.edges if t < 0]

    def vertex_halfedges(self, v: int) -> list[int]:
        """Outgoing half-edges of ``v`` in counter-clockwise order.

        Only defined for interior vertices.
        """
        outs = self.vertex_out[v]
        if not outs:
            return []
        ring = [outs[0]]
        h = self.he_twin[self.he_prev[outs[0]]]
        while h != outs[0]:
            if h < 0:
                raise MeshError(f"vertex {v} lies on the boundary")
            ring.append(h)
            h = self.he_twin[self.he_prev[h]]
        return ring

    def valence(self, v: int) -> int:
        outs = self.vertex_out[v]
        # a boundary vertex has one incoming boundary edge not among its outgoing ones
        extra = sum(1 for h in outs if self.he_twin[self.he_prev[h]] < 0)
        return len(outs) + extra

    # -- geometry and summary ----------------------------------------------

    def signed_volume(self) -> Fraction:
        """Six times the enclosed volume (fan triangulation, exact)."""
        vol = Fraction(0)
        P = self.vertices
        for f in self.faces:
            a = P[f[0]]
            for i in range(1, len(f) - 1):
                b, c = P[f[i]], P[f[i + 1]]
                vol += (
                    a[0] * (b[1] * c[2] - b[2] * c[1])
                    - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0])
                )
        return vol

    def stats(self) -> MeshStats:
        V, E, F = len(self.vertices), len(self.edges), len(self.faces)
        return MeshStats(
            V, E, F, V - E + F,
            dict(sorted(Counter(len(f) for f in self.faces).items())),
            dict(sorted(Counter(self.valence(v) for v in range(V)).items())),
        )

    @property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def transformed(self, matrix, offset=(0, 0, 0)) -> Mesh:
        """Apply ``x -> matrix @ x + offset`` exactly."""
        M = [[as_exact(c) for c in row] for row in matrix]
        t = [as_exact(c) for c in offset]
        pts = [
            tuple(sum(M[r][k] * p[k] for k in range(3)) + t[r] for r in range(3))
            for p in self.vertices
        ]
        return Mesh(pts, self.faces)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mesh)
            and self.vertices == other.vertices
            and self.faces == other.faces
        )

    def __hash__(self):
        return hash((self.vertices, self.faces))

    def __repr__(self) -> str:
        return f"Mesh({self.stats().line()})"


def face_centroid(m: Mesh, face: int) -> Point:
    if not 0 <= face < len(m.faces):
        raise IndexError(f"face {face} out of range (mesh has {len(m.faces)})")
    f = m.faces[face]
    return tuple(sum(m.vertices[v][k] for v in f) / len(f) for k in range(3))


# -- fixtures ---------------------------------------------------------------


def make_tetrahedron(scale=1) -> Mesh:
    """Regular tetrahedron with corners ``scale * (A, B, C, D)``.

    Face 0 is ``B, C, D`` and face 1 is ``A, D, C``.
    """
    s = as_exact(scale)
    if s <= 0:
        raise ValueError(f"scale must be positive, got {s}")
    verts = [tuple(s * c for c in v) for v in TETRAHEDRON_VERTICES]
    return Mesh(verts, [(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)])


def make_cube(scale=1) -> Mesh:
    s = as_exact(scale)
    verts = [(s * x, s * y, s * z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    faces = [
        (0, 1, 3, 2), (4, 6, 7, 5),  # x = -1, x = +1
        (0, 4, 5, 1), (2, 3, 7, 6),  # y = -1, y = +1
        (0, 2, 6, 4), (1, 5, 7, 3),  # z = -1, z = +1
    ]
    return Mesh(verts, faces)


def make_prism(scale=1) -> Mesh:
    """Triangular prism: two triangles joined by three quads."""
    s = as_exact(scale)
    base = [(1, 0), (-1, 1), (-1, -1)]
    verts = [(s * x, s * y, s * z) for z in (-1, 1) for x, y in base]
    faces = [(0, 2, 1), (3, 4, 5), (0, 1, 4, 3), (1, 2, 5, 4), (2, 0, 3, 5)]
    return Mesh(verts, faces)


# -- file formats -----------------------------------------------------------


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else repr(float(x))


def _parse_scalar(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise MeshParseError(f"bad number {tok!r}", line) from None


def _parse_exact_comment(text: str, line: int) -> tuple[int, Point] | None:
    body = text.lstrip("#").strip()
    if not body.startswith("exact "):
        return None
    head, _, rest = body[len("exact "):].partition(":")
    toks = rest.split()
    if len(toks) != 3:
        raise MeshParseError("exact comment needs three coordinates", line)
    try:
        idx = int(head)
    except ValueError:
        raise MeshParseError(f"bad exact index {head!r}", line) from None
    return idx, tuple(_parse_scalar(t, line) for t in toks)


def _parse_obj(text: str) -> Mesh:
    verts: list[Point] = []
    faces: list[list[int]] = []
    exact: dict[int, Point] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            hit = _parse_exact_comment(line, ln)
            if hit:
                exact[hit[0]] = hit[1]
            continue
        tag, *toks = line.split()
        if tag == "v":
            if len(toks) < 3:
                raise MeshParseError("vertex needs three coordinates", ln)
            verts.append(tuple(_parse_scalar(t, ln) for t in toks[:3]))
        elif tag == "f":
            if len(toks) < 3:
                raise MeshParseError("face needs at least three indices", ln)
            face = []
            for t in toks:
                try:
                    i = int(t.split("/")[0])
                except ValueError:
                    raise MeshParseError(f"bad face index {t!r}", ln) from None
                if i < 0:
                    i = len(verts) + 1 + i
                if not 1 <= i <= len(verts):
                    raise MeshParseError(f"face index {t} out of range (OBJ is 1-based)", ln)
                face.append(i - 1)
            faces.append(face)
    for i, p in exact.items():
        if not 1 <= i <= len(verts):
            raise MeshParseError(f"exact comment for unknown vertex {i}")
        verts[i - 1] = p
    return Mesh(verts, faces)


def _parse_off(text: str) -> Mesh:
    exact: dict[int, Point] = {}
    tokens: list[tuple[int, list[str]]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        body, hash_, comment = raw.partition("#")
        if hash_:
            hit = _parse_exact_comment("#" + comment, ln)
            if hit:
                exact[hit[0]] = hit[1]
        if body.strip():
            tokens.append((ln, body.split()))
    if not tokens or not tokens[0][1][0].endswith("OFF"):
        raise MeshParseError("missing OFF header", tokens[0][0] if tokens else 1)
    ln, head = tokens[0]
    rest = tokens[1:]
    counts = head[1:]
    if not counts:
        if not rest:
            raise MeshParseError("missing counts line", ln)
        ln, counts = rest[0]
        rest = rest[1:]
    try:
        nv, nf = int(counts[0]), int(counts[1])
    except (ValueError, IndexError):
        raise MeshParseError("bad counts line", ln) from None
    if len(rest) < nv + nf:
        raise MeshParseError(f"expected {nv} vertices and {nf} faces", ln)
    verts = []
    for ln, toks in rest[:nv]:
        if len(toks) < 3:
            raise MeshParseError("vertex needs three coordinates", ln)
        verts.append(tuple(_parse_scalar(t, ln) for t in toks[:3]))
    faces = []
    for ln, toks in rest[nv:nv + nf]:
        try:
            k = int(toks[0])
            idx = [int(t) for t in toks[1:1 + k]]
        except ValueError:
            raise MeshParseError("bad face record", ln) from None
        if len(idx) != k:
            raise MeshParseError(f"face lists {len(idx)} of {k} indices", ln)
        for i in idx:
            if not 0 <= i < nv:
                raise MeshParseError(f"face index {i} out of range", ln)
        faces.append(idx)
    for i, p in exact.items():
        if not 0 <= i < nv:
            raise MeshParseError(f"exact comment for unknown vertex {i}")
        verts[i] = p
    return Mesh(verts, faces)


def load_mesh(data: bytes | str, format: str) -> Mesh:
    """Parse OBJ or OFF text.

    Decimal coordinates convert exactly (``"0.25"`` is ``1/4``); ``# exact``
    comment lines, when present, override the decimal fields.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    fmt = format.upper()
    if fmt == "OBJ":
        return _parse_obj(text)
    if fmt == "OFF":
        return _parse_off(text)
    raise ValueError(f"unknown mesh format {format!r}")


def save_mesh(m: Mesh, format: str) -> bytes:
    fmt = format.upper()
    out: list[str] = []
    if fmt == "OBJ":
        for i, p in enumerate(m.vertices, 1):
            out.append(f"# exact {i}: " + " ".join(_fraction_str(c) for c in p))
            out.append("v " + " ".join(_decimal_str(c) for c in p))
        for f in m.faces:
            out.append("f " + " ".join(str(i + 1) for i in f))
    elif fmt == "OFF":
        out.append("OFF")
        out.append(f"{len(m.vertices)} {len(m.faces)} {len(m.edges)}")
        for i, p in enumerate(m.vertices):
            out.append(" ".join(_decimal_str(c) for c in p)
                       + f"  # exact {i}: " + " ".join(_fraction_str(c) for c in p))
        for f in m.faces:
            out.append(f"{len(f)} " + " ".join(str(i) for i in f))
    else:
        raise ValueError(f"unknown mesh format {format!r}")
    return ("\n".join(out) + "\n").encode("utf-8") if out else b""


def _format_from_path(path: Path, format: str | None) -> str:
    if format:
        return format
    suffix = path.suffix.lower().lstrip(".")
    if suffix not in ("obj", "off"):
        raise ValueError(f"cannot infer mesh format from {path.name!r}")
    return suffix


def read_mesh(path, format: str | None = None) -> Mesh:
    path = Path(path)
    return load_mesh(path.read_bytes(), _format_from_path(path, format))


def write_mesh(m: Mesh, path, format: str | None = None) -> None:
    path = Path(path)
    path.write_bytes(save_mesh(m, _format_from_path(path, format)))
