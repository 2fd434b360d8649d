import networkx as nx
import pytest

from orthoplan.errors import InconsistentRotation, NonPlanar, TooFewVertices, UnknownOuterFace
from orthoplan.planar import build_graph, canonical_cycle, connectivity_at_least, faces, validate_ptg


def test_oct_faces_and_euler(oct_graph):
    fs = faces(oct_graph)
    assert len(fs) == 8
    assert oct_graph.n - oct_graph.m + len(fs) == 2
    assert canonical_cycle(oct_graph.outer_face) == canonical_cycle((1, 2, 3))


def test_triangle_has_two_faces():
    g = build_graph([(1, 2), (2, 3), (3, 1)])
    fs = faces(g)
    assert len(fs) == 2
    inner = next(f for f in fs if not f.is_outer)
    outer = next(f for f in fs if f.is_outer)
    assert canonical_cycle(inner.vertices) == canonical_cycle(tuple(reversed(outer.vertices)))


def test_k5_is_rejected():
    k5 = list(nx.complete_graph(range(1, 6)).edges)
    with pytest.raises(NonPlanar):
        build_graph(k5)


def test_g5_faces(g5):
    got = {canonical_cycle(f.vertices) for f in faces(g5) if not f.is_outer}
    want = {canonical_cycle(t) for t in [(1, 5, 2), (2, 5, 4), (1, 4, 5), (2, 4, 3), (1, 3, 4)]}
    assert got == want
    assert sum(1 for f in faces(g5) if f.is_outer) == 1


def test_g6_face_count(g6):
    assert len(faces(g6)) == 8


def test_face_order_is_deterministic(g6):
    assert faces(g6) == faces(build_graph(sorted(g6.edges, reverse=True), outer_face=(1, 2, 3)))


def test_every_dart_in_one_face(g6):
    darts = [(f.vertices[i], f.vertices[(i + 1) % len(f)]) for f in faces(g6) for i in range(len(f))]
    assert len(darts) == len(set(darts)) == 2 * g6.m


def test_validate_ptg(g5):
    assert validate_ptg(g5).verdict
    path = build_graph([(1, 2), (2, 3)])
    assert not validate_ptg(path).verdict
    square = build_graph([(1, 2), (2, 3), (3, 4), (4, 1)])
    rep = validate_ptg(square)
    assert not rep.verdict
    assert any("triangular" in name for name, _ in rep.failures())


def test_connectivity(oct_graph, g5):
    assert connectivity_at_least(oct_graph, 4)
    assert connectivity_at_least(g5, 3)
    assert not connectivity_at_least(g5, 4)
    tri = build_graph([(1, 2), (2, 3), (3, 1)])
    assert connectivity_at_least(tri, 2)
    with pytest.raises(TooFewVertices):
        connectivity_at_least(tri, 3)


def test_rotation_is_adopted_verbatim(g5):
    g = build_graph(g5.edges, rotation=g5.rotation, outer_face=g5.outer_face)
    assert g.rotation == g5.rotation


def test_bad_rotation(g5):
    rot = dict(g5.rotation)
    rot[1] = rot[1][:-1]
    with pytest.raises(InconsistentRotation):
        build_graph(g5.edges, rotation=rot)


def test_unknown_outer_face(g5):
    with pytest.raises(UnknownOuterFace):
        build_graph(g5.edges, outer_face=(1, 2, 5, 4))


def test_default_outer_face_is_longest():
    # a square with one diagonal: the 4-cycle is the only face of length 4
    g = build_graph([(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
    assert len(g.outer_face) == 4
