from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsbicubic.doosabin import ds_refine
from dsbicubic.mesh import (
    DegenerateFaceError,
    Mesh,
    MeshError,
    MeshParseError,
    NonManifoldError,
    OrientationError,
    face_centroid,
    load_mesh,
    make_cube,
    make_prism,
    make_tetrahedron,
    read_mesh,
    save_mesh,
    write_mesh,
)

CUBE_OBJ = """\
v 0 0 0
v 1 0 0
v 1 1 0
v 0 1 0
v 0 0 1
v 1 0 1
v 1 1 1
v 0 1 1
f 1 4 3 2
f 5 6 7 8
f 1 2 6 5
f 2 3 7 6
f 3 4 8 7
f 4 1 5 8
"""

TETRA_OFF = """\
OFF
4 4 6
-1 -1 -1
-1 1 1
1 -1 1
1 1 -1
3 1 2 3
3 0 3 2
3 0 1 3
3 0 2 1
"""


def test_cube_obj_counts():
    m = load_mesh(CUBE_OBJ, "OBJ")
    s = m.stats()
    assert (s.vertex_count, s.edge_count, s.face_count, s.euler) == (8, 12, 6, 2)
    assert s.line() == "V=8 E=12 F=6 euler=2"
    assert m.is_closed()


def test_obj_index_zero_is_an_error():
    text = CUBE_OBJ.replace("f 1 4 3 2", "f 0 4 3 2")
    with pytest.raises(MeshParseError) as err:
        load_mesh(text, "OBJ")
    assert err.value.line == 9


def test_off_tetrahedron_matches_fixture():
    m = load_mesh(TETRA_OFF, "OFF")
    assert m == make_tetrahedron()
    assert m.stats().line() == "V=4 E=6 F=4 euler=2"


def test_save_off_header():
    text = save_mesh(make_tetrahedron(), "OFF").decode()
    lines = text.splitlines()
    assert lines[0] == "OFF"
    assert lines[1].split()[:2] == ["4", "4"]


@pytest.mark.parametrize("fmt", ["OBJ", "OFF"])
def test_round_trip_refined_mesh_is_exact(fmt):
    m = ds_refine(make_tetrahedron(), 3).meshes[-1]
    assert any(c.denominator > 1 for p in m.vertices for c in p)
    back = load_mesh(save_mesh(m, fmt), fmt)
    assert back == m
    assert save_mesh(back, fmt) == save_mesh(m, fmt)


def test_empty_mesh():
    m = Mesh([], [])
    assert m.stats().line() == "V=0 E=0 F=0 euler=0"
    assert save_mesh(m, "OBJ") == b""
    assert load_mesh(b"", "OBJ") == m


def test_decimal_coordinates_are_exact():
    m = load_mesh("v 0.25 0 0\nv 0 0.1 0\nv 0 0 1\nf 1 2 3\n", "OBJ")
    assert m.vertices[0][0] == Fraction(1, 4)
    assert m.vertices[1][1] == Fraction(1, 10)


def test_bad_number_reports_line():
    with pytest.raises(MeshParseError) as err:
        load_mesh("v 0 0 0\nv 1 x 0\n", "OBJ")
    assert err.value.line == 2


def test_off_truncated():
    with pytest.raises(MeshParseError):
        load_mesh("OFF\n4 4 6\n0 0 0\n", "OFF")


def test_unknown_format():
    with pytest.raises(ValueError):
        load_mesh("", "PLY")


def test_file_io_infers_format(tmp_path):
    m = make_cube()
    write_mesh(m, tmp_path / "c.obj")
    assert read_mesh(tmp_path / "c.obj") == m
    with pytest.raises(ValueError):
        write_mesh(m, tmp_path / "c.stl")


def test_tetrahedron_scale():
    m = make_tetrahedron(1260)
    assert m.vertices[0] == (-1260, -1260, -1260)
    assert m.vertices[3] == (1260, 1260, -1260)


def test_face_centroid():
    # face 0 is B, C, D whose mean is -A / 3
    assert face_centroid(make_tetrahedron(), 0) == (Fraction(1, 3),) * 3
    assert face_centroid(make_tetrahedron(3), 0) == (1, 1, 1)
    assert face_centroid(make_tetrahedron(), 1) == (Fraction(1, 3), Fraction(-1, 3), Fraction(-1, 3))
    with pytest.raises(IndexError):
        face_centroid(make_tetrahedron(), 4)


def test_fixture_meshes_are_valid_closed_surfaces():
    for m in (make_tetrahedron(), make_cube(), make_prism()):
        assert m.is_closed()
        assert m.euler == 2
        assert m.signed_volume() > 0


def test_twin_is_an_involution():
    m = make_prism()
    for h, t in enumerate(m.he_twin):
        assert t >= 0 and m.he_twin[t] == h
        assert m.he_origin[t] == m.he_dest(h)


def test_vertex_ring_is_counter_clockwise_cycle():
    m = make_cube()
    for v in range(8):
        ring = m.vertex_halfedges(v)
        assert len(ring) == m.valence(v) == 3
        assert sorted(ring) == sorted(m.vertex_out[v])


def test_non_manifold_edge_names_vertices():
    faces = [(0, 1, 2), (0, 1, 3)]
    with pytest.raises(NonManifoldError, match=r"\(0, 1\)"):
        Mesh([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], faces)


def test_three_faces_on_one_edge():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1)]
    with pytest.raises(NonManifoldError):
        Mesh(pts, [(0, 1, 2), (1, 0, 3), (0, 1, 4)])


def test_bowtie_vertex_is_non_manifold():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    with pytest.raises(NonManifoldError, match="vertex 0"):
        Mesh(pts, [(0, 1, 2), (0, 3, 4)])


def test_degenerate_faces():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    with pytest.raises(DegenerateFaceError):
        Mesh(pts, [(0, 1)])
    with pytest.raises(DegenerateFaceError):
        Mesh(pts, [(0, 1, 1)])
    with pytest.raises(MeshError):
        Mesh(pts, [(0, 1, 5)])


def test_inward_orientation_is_rejected():
    t = make_tetrahedron()
    with pytest.raises(OrientationError):
        Mesh(t.vertices, [f[::-1] for f in t.faces])


def test_open_mesh_has_boundary():
    m = Mesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)])
    assert not m.is_closed()
    assert len(m.boundary_edges()) == 3
    with pytest.raises(MeshError):
        m.vertex_halfedges(0)


rational = st.fractions(min_value=-5, max_value=5, max_denominator=9)


@settings(max_examples=30, deadline=None)
@given(st.lists(rational, min_size=9, max_size=9), st.lists(rational, min_size=3, max_size=3))
def test_centroid_is_affine_equivariant(entries, offset):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    m = make_cube()

    def f(p):
        return tuple(sum(M[r][k] * p[k] for k in range(3)) + offset[r] for r in range(3))

    # orientation may flip under a reflection, so map the points only
    pts = [f(p) for p in m.vertices]
    for face in range(6):
        expect = f(face_centroid(m, face))
        got = tuple(sum(pts[v][k] for v in m.faces[face]) / 4 for k in range(3))
        assert got == expect
