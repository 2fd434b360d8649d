import pytest

from orthoplan.generate import GenSpec, SplitMix64, generate
from orthoplan.planar import validate_ptg
from orthoplan.triangles import find_kl, find_kt


def test_splitmix_reference_values():
    # published SplitMix64 outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_small_instances():
    gl = generate(GenSpec("L", 5, 0))
    assert gl.n == 5 and find_kl(gl) and validate_ptg(gl).verdict
    gt = generate(GenSpec("T", 6, 0))
    assert gt.n == 6 and find_kt(gt) and validate_ptg(gt).verdict


@pytest.mark.parametrize("kind, n", [("L", 4), ("T", 5), ("X", 10)])
def test_bad_specs(kind, n):
    with pytest.raises(ValueError):
        GenSpec(kind, n)


def test_deterministic():
    a = generate(GenSpec("L", 50, 123))
    b = generate(GenSpec("L", 50, 123))
    assert a.rotation == b.rotation and a.outer_face == b.outer_face
    assert generate(GenSpec("L", 50, 124)).rotation != a.rotation


@pytest.mark.parametrize("seed", range(10))
def test_planted_sites(seed):
    for kind, finder in (("L", find_kl), ("T", find_kt)):
        g = generate(GenSpec(kind, 12 + seed, seed))
        assert g.n == 12 + seed
        assert validate_ptg(g).verdict
        assert finder(g)
