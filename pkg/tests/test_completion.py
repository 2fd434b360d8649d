import pytest

from orthoplan.completion import add_ns_edge, complete, find_boundary_arcs, four_complete, without_ns_edge
from orthoplan.errors import NotFourConnected, PreconditionViolated
from orthoplan.planar import build_graph, connectivity_at_least, validate_ptg
from orthoplan.pipeline import run
from orthoplan.triangles import remove_complex_triangles


def _modified(g, shape):
    res = run(g, shape)
    return without_ns_edge(res.completed), res.completed


def _check_arcs(g, arcs):
    covered = {v for arc in arcs.arcs for v in arc}
    assert covered == set(g.outer_face)
    for k in range(4):
        assert arcs.arcs[k][-1] == arcs.arcs[(k + 1) % 4][0]


def test_arcs_cover_outer_cycle(g5):
    res = run(g5, "L")
    arcs = res.completed.arcs
    assert len(arcs.arcs) == 4
    assert set(arcs.ccw) == {v for arc in arcs.arcs for v in arc}
    for k in range(4):
        assert arcs.arcs[k][-1] == arcs.arcs[(k + 1) % 4][0]


def test_four_cycle_outer_gives_single_edge_arcs():
    wheel = build_graph([(1, 2), (2, 3), (3, 4), (4, 1), (5, 1), (5, 2), (5, 3), (5, 4)], outer_face=(1, 2, 3, 4))
    arcs = find_boundary_arcs(wheel)
    _check_arcs(wheel, arcs)
    assert all(len(a) == 2 for a in arcs.arcs)


def test_triangle_completion():
    tri = build_graph([(1, 2), (2, 3), (3, 1)])
    cg = four_complete(tri, find_boundary_arcs(tri))
    assert cg.graph.n == 7
    assert validate_ptg(cg.graph).verdict


def test_frame_degrees(g5):
    res = run(g5, "L")
    cg = res.completed
    g = without_ns_edge(cg)
    for d, x in cg.directions.items():
        assert g.degree(x) == len(cg.arcs.arc(d)) + 2
    assert set(g.outer_face) == set(cg.frame)


def test_completed_is_four_connected(g5, g6):
    for g, shape in ((g5, "L"), (g6, "T")):
        cg = run(g, shape).completed
        assert cg.ns_edge_present
        assert connectivity_at_least(cg.graph, 4)
        assert validate_ptg(without_ns_edge(cg)).verdict


def test_oct_needs_its_outer_triangle_hit(oct_graph):
    with pytest.raises(NotFourConnected):
        complete(oct_graph)
    g, removal = remove_complex_triangles(oct_graph, [])
    assert len(removal.Enodes) == 1
    assert connectivity_at_least(complete(g).graph, 4)


def test_second_ns_edge_rejected(g5):
    cg = run(g5, "L").completed
    with pytest.raises(PreconditionViolated):
        add_ns_edge(cg)


def test_rotations_keep_corners(g5):
    arcs = run(g5, "L").completed.arcs
    for k in range(4):
        r = arcs.rotated(k)
        assert sorted(r.corners) == sorted(arcs.corners)
        assert r.rotated(4 - k) == arcs
