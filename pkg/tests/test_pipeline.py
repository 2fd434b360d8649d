import pytest

from orthoplan.errors import FlipBreaksRel, NoKLSite, NoKTSite, PreconditionViolated
from orthoplan.generate import GenSpec, SplitMix64, generate
from orthoplan.pipeline import run, run_l
from orthoplan.verify import check_plan_against_graph


def test_oct_has_no_site(oct_graph):
    with pytest.raises(NoKLSite):
        run(oct_graph, "L")
    with pytest.raises(NoKTSite):
        run(oct_graph, "T")
    assert NoKLSite.exit_code == NoKTSite.exit_code == 4


def test_site_index_checked(g5):
    with pytest.raises(PreconditionViolated):
        run(g5, "L", site_index=9)
    other = run(g5, "L", site_index=1)
    assert other.plan.shapes[other.plan.designated] == "L"


def test_unknown_shape(g5):
    with pytest.raises(ValueError):
        run(g5, "U")


def _suite_graph(seed):
    n = 8 + SplitMix64(seed ^ 0xABC).below(193)
    return generate(GenSpec("L", n, seed))


def test_corner_rotation_rescues_case_three():
    # seed 166 of the acceptance suite: the first corner choice ends in a
    # Case-3 labeling whose flips break regularity
    g = _suite_graph(166)
    with pytest.raises(FlipBreaksRel):
        run_l(g, rotations=(0,))
    res = run_l(g)
    assert res.rotation > 0 and res.rejected
    assert check_plan_against_graph(res.plan, g, res.plan.designated, "L").verdict


def test_timings_recorded(g5):
    res = run(g5, "L")
    assert {"detect", "eliminate", "complete", "order", "rel", "layout"} <= set(res.timings)
