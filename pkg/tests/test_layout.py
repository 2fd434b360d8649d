import pytest

from orthoplan.errors import NotAdjacent, NotRealizable, NotRectilinear, PreconditionViolated, SelfIntersecting
from orthoplan.layout import (
    L_SHAPE,
    OTHER,
    RECTANGLE,
    T_SHAPE,
    U_SHAPE,
    Z_SHAPE,
    Rect,
    RectPlan,
    canonicalize_polygon,
    classify_shape,
    merge_rooms,
    outline,
    rectangular_dual,
    strip_frame,
)
from orthoplan.pipeline import run
from orthoplan.triangles import RemovalPlan
from orthoplan.verify import check_plan_against_graph, check_tiling, plan_adjacency


@pytest.mark.parametrize(
    "pts, shape",
    [
        ([(0, 0), (2, 0), (2, 2), (0, 2)], RECTANGLE),
        ([(0, 0), (2, 0), (2, 2), (1, 2), (1, 1), (0, 1)], L_SHAPE),
        ([(0, 1), (1, 1), (1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (0, 2)], T_SHAPE),
        ([(1, 0), (3, 0), (3, 1), (2, 1), (2, 2), (0, 2), (0, 1), (1, 1)], Z_SHAPE),
        ([(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)], U_SHAPE),
        ([(0, 0), (3, 0), (3, 3), (2, 3), (2, 2), (1, 2), (1, 1), (0, 1)], OTHER),
    ],
)
def test_classify(pts, shape):
    assert classify_shape(pts) == shape


def test_canonicalize():
    assert canonicalize_polygon([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]) == ((0, 0), (2, 0), (2, 2), (0, 2))
    assert canonicalize_polygon([(0, 2), (2, 2), (2, 0), (0, 0)]) == ((0, 0), (2, 0), (2, 2), (0, 2))
    with pytest.raises(NotRectilinear):
        canonicalize_polygon([(0, 0), (2, 2), (0, 2)])
    with pytest.raises(SelfIntersecting):
        canonicalize_polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, -1), (3, -1), (3, 2), (0, 2)])


def test_flush_union_is_l_not_t():
    cells = [Rect(0, 0, 2, 1), Rect(0, 1, 1, 2)]
    assert classify_shape(outline(cells)) == L_SHAPE


def test_degenerate_rect():
    with pytest.raises(NotRealizable):
        Rect(0, 0, 0, 1)


def test_g5_rect_plan(g5):
    res = run(g5, "L")
    full = rectangular_dual(res.rel)
    assert len(full.module) == res.completed.graph.n
    assert check_tiling(full).verdict
    # wall adjacency equals the completed graph without (N, S)
    want = set(res.rel.graph.edges)
    assert plan_adjacency(full) == want
    inner = strip_frame(full, res.completed.directions)
    assert len(inner.module) == res.completed.graph.n - 4
    assert check_tiling(inner).verdict


def test_g5_final_plan(g5):
    res = run(g5, "L")
    plan = res.plan
    assert len(plan.polygons) == 5
    assert plan.designated in (1, 4)
    assert plan.shapes[plan.designated] == L_SHAPE
    assert check_plan_against_graph(plan, g5, plan.designated, L_SHAPE).verdict


def test_g6_final_plan(g6):
    plan = run(g6, "T").plan
    assert len(plan.polygons) == 6
    assert plan.designated in (2, 4)
    assert plan.shapes[plan.designated] == T_SHAPE
    assert len(plan.polygons[plan.designated]) == 8


def test_strip_needs_frame(g5):
    res = run(g5, "L")
    inner = strip_frame(rectangular_dual(res.rel), res.completed.directions)
    with pytest.raises(PreconditionViolated):
        strip_frame(inner, res.completed.directions)


def test_merge_needs_selector(g5):
    res = run(g5, "L")
    inner = strip_frame(rectangular_dual(res.rel), res.completed.directions)
    with pytest.raises(PreconditionViolated):
        merge_rooms(inner, res.removal, res.site, None)


def test_merge_rejects_distant_modules():
    plan = RectPlan({1: Rect(0, 0, 1, 1), 2: Rect(1, 0, 2, 1), 3: Rect(2, 0, 3, 1)}, Rect(0, 0, 3, 1))
    from orthoplan.layout import _Merger

    mg = _Merger(plan)
    with pytest.raises(NotAdjacent):
        mg.merge(1, 3)
    mg.merge(1, 2)
    assert mg.find(1) == 2


def test_merge_provenance(g5):
    res = run(g5, "L")
    merged = [x for x, _ in res.plan.merges]
    assert sorted(merged) == sorted([*res.removal.Enodes, res.site.u])
    assert (res.site.u, res.plan.designated) in res.plan.merges
