import json

import pytest

from orthoplan.planar import build_graph


def _edges(spec):
    return [(int(p[0]), int(p[1])) for p in spec.split()]


OCT_EDGES = _edges("12 13 14 15 23 34 45 52 62 63 64 65")
G5_EDGES = _edges("12 23 31 41 42 43 51 52 54")
G6_EDGES = _edges("12 23 31 41 42 43 51 52 54 62 63 64")


@pytest.fixture
def oct_graph():
    return build_graph(OCT_EDGES, outer_face=(1, 2, 3))


@pytest.fixture
def g5():
    return build_graph(G5_EDGES, outer_face=(1, 2, 3))


@pytest.fixture
def g6():
    return build_graph(G6_EDGES, outer_face=(1, 2, 3))


def write_graph_file(path, edges, outer=(1, 2, 3)):
    vs = sorted({v for e in edges for v in e})
    path.write_text(json.dumps({"vertices": vs, "edges": [list(e) for e in edges], "outer_face": list(outer)}))
    return path


@pytest.fixture
def fixture_files(tmp_path):
    return {
        "oct": write_graph_file(tmp_path / "oct.json", OCT_EDGES),
        "g5": write_graph_file(tmp_path / "g5.json", G5_EDGES),
        "g6": write_graph_file(tmp_path / "g6.json", G6_EDGES),
    }
