"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.  Failing random instances are archived
under ``tests/counterexamples/``.
"""

from __future__ import annotations

import collections
import dataclasses
import json
import statistics
import sys
import time
from pathlib import Path

import pytest

from orthoplan.cli import main as cli_main
from orthoplan.errors import OrthoPlanError
from orthoplan.formats import graph_to_dict
from orthoplan.generate import GenSpec, SplitMix64, generate
from orthoplan.layout import L_SHAPE, T_SHAPE, RectPlan, Rect, canonicalize_polygon, rectangular_dual, strip_frame
from orthoplan.ordering import CATEGORIES, CanonicalOrdering, validate_ordering
from orthoplan.pipeline import run
from orthoplan.planar import build_graph
from orthoplan.rel import T1, T2, validate_rel
from orthoplan.triangles import find_separating_triangles
from orthoplan.verify import brute_force_separating_triangles, check_plan_against_graph, check_tiling, scaling_probe

HERE = Path(__file__).parent
ARCHIVE = HERE / "counterexamples"

SUITE_SIZE = 500
ORACLE_GRAPHS = 100
PROBE_SIZES = (5000, 10000, 20000)
PROBE_SEEDS = 3
PROBE_MAX_RATIO = 3.0
FIXTURE_BUDGET_S = 0.100


def _edges(spec):
    return [(int(p[0]), int(p[1])) for p in spec.split()]


FIXTURES = {
    "OCT": _edges("12 13 14 15 23 34 45 52 62 63 64 65"),
    "G5": _edges("12 23 31 41 42 43 51 52 54"),
    "G6": _edges("12 23 31 41 42 43 51 52 54 62 63 64"),
}


def fixture(name):
    return build_graph(FIXTURES[name], outer_face=(1, 2, 3))


def suite_n(seed: int) -> int:
    return 8 + SplitMix64(seed ^ 0xABC).below(193)


RESULTS: list[str] = []
_CAPSYS = None


def report(cid: str, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {cid}: {detail}"
    RESULTS.append(line)
    if _CAPSYS is None:
        print(line, flush=True)
    else:
        with _CAPSYS.disabled():
            print(line, flush=True)
    return ok


def _corners(poly):
    p = canonicalize_polygon(poly)
    k = len(p)
    reflex = []
    for i in range(k):
        a, b, c = p[i - 1], p[i], p[(i + 1) % k]
        reflex.append((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) < 0)
    idx = [i for i in range(k) if reflex[i]]
    gaps = sorted((idx[(j + 1) % len(idx)] - idx[j] - 1) % k for j in range(len(idx))) if len(idx) > 1 else []
    return k, sum(reflex), gaps


def _timed_run(g, shape):
    run(g, shape)  # warm caches
    times, res = [], None
    for _ in range(5):
        t0 = time.perf_counter()
        res = run(g, shape)
        check_plan_against_graph(res.plan, g, res.plan.designated, res.plan.shapes[res.plan.designated])
        times.append(time.perf_counter() - t0)
    return res, statistics.median(times)


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


def criterion_1() -> bool:
    g = fixture("G5")
    res, secs = _timed_run(g, "L")
    plan = res.plan
    rep = check_plan_against_graph(plan, g, plan.designated, L_SHAPE)
    k, r, _ = _corners(plan.polygons[plan.designated])
    ok = (
        len(plan.polygons) == 5
        and rep.verdict
        and (k, r) == (6, 1)
        and res.category in CATEGORIES
        and secs < FIXTURE_BUDGET_S
    )
    return report(
        "C1 G5 L plan",
        ok,
        f"modules={len(plan.polygons)} designated={plan.designated} corners={k} reflex={r} "
        f"category={res.category} checks={'ok' if rep.verdict else 'fail'} median={secs * 1000:.1f}ms (<100ms)",
    )


def criterion_2() -> bool:
    g = fixture("G6")
    res, secs = _timed_run(g, "T")
    plan = res.plan
    rep = check_plan_against_graph(plan, g, plan.designated, T_SHAPE)
    k, r, gaps = _corners(plan.polygons[plan.designated])
    ok = len(plan.polygons) == 6 and rep.verdict and (k, r) == (8, 2) and gaps == [2, 4] and secs < FIXTURE_BUDGET_S
    return report(
        "C2 G6 T plan",
        ok,
        f"modules={len(plan.polygons)} designated={plan.designated} corners={k} reflex={r} gaps={gaps} "
        f"checks={'ok' if rep.verdict else 'fail'} median={secs * 1000:.1f}ms (<100ms)",
    )


def _archive(kind: str, seed: int, g, why: str) -> None:
    ARCHIVE.mkdir(exist_ok=True)
    data = graph_to_dict(g)
    data["why"] = why
    (ARCHIVE / f"{kind}_{seed}.json").write_text(json.dumps(data, indent=2, sort_keys=True))


def _random_suite(kind: str) -> tuple[collections.Counter, collections.Counter]:
    shape = L_SHAPE if kind == "L" else T_SHAPE
    gates: collections.Counter = collections.Counter()
    notes: collections.Counter = collections.Counter()
    for seed in range(SUITE_SIZE):
        g = generate(GenSpec(kind, suite_n(seed), seed))
        try:
            res = run(g, kind)
        except OrthoPlanError as exc:
            _archive(kind, seed, g, f"{type(exc).__name__}: {exc}")
            notes[type(exc).__name__] += 1
            continue
        gates["pipeline"] += 1
        if kind == "L":
            gates["category"] += res.category in CATEGORIES
            notes[f"category {res.category}"] += 1
            notes[f"case {res.selector.case}"] += 1
            notes["corner rotation needed"] += res.rotation > 0
        else:
            gates["category"] += 1
        gates["def4"] += validate_ordering(res.completed, res.ordering).verdict
        gates["def5"] += validate_rel(res.rel).verdict
        rep = check_plan_against_graph(res.plan, g, res.plan.designated, shape)
        gates["designated"] += res.plan.shapes.get(res.plan.designated) == shape
        diff = rep.adjacency_diff
        gates["adjacency"] += not diff["missing"] and not diff["extra"]
        gates["tiling"] += rep.stages["tiling"].verdict
        if not rep.verdict:
            _archive(kind, seed, g, json.dumps(rep.to_dict())[:2000])
    return gates, notes


def _suite_line(cid: str, kind: str) -> bool:
    gates, notes = _random_suite(kind)
    names = ["pipeline", "category", "def4", "def5", "designated", "adjacency", "tiling"]
    ok = all(gates[n] == SUITE_SIZE for n in names)
    rates = " ".join(f"{n}={100 * gates[n] / SUITE_SIZE:.1f}%" for n in names)
    extra = ", ".join(f"{k}: {v}" for k, v in sorted(notes.items()))
    return report(cid, ok, f"{SUITE_SIZE} instances n in [8,200]: {rates}" + (f" ({extra})" if extra else ""))


def criterion_3() -> bool:
    return _suite_line("C3 random L suite", "L")


def criterion_4() -> bool:
    return _suite_line("C4 random T suite", "T")


def criterion_5() -> bool:
    bad = []
    for seed in range(ORACLE_GRAPHS):
        kind = "L" if seed % 2 == 0 else "T"
        n = 8 + SplitMix64(seed ^ 0x5EED).below(33)
        g = generate(GenSpec(kind, n, seed))
        if find_separating_triangles(g) != brute_force_separating_triangles(g):
            bad.append(seed)
    return report("C5 oracle equivalence", not bad, f"{ORACLE_GRAPHS} graphs n<=40, mismatches: {bad or 'none'}")


def criterion_6() -> bool:
    g = generate(GenSpec("L", 30, 1))
    res = run(g, "L")
    rel = res.rel
    e = next(e for e in sorted(rel.label) if not set(e) & rel.frame)
    lab = dict(rel.label)
    lab[e] = T1 if lab[e] == T2 else T2
    rel_rep = validate_rel(dataclasses.replace(rel, label=lab))

    plan = strip_frame(rectangular_dual(res.rel), res.completed.directions)
    mod = dict(plan.module)
    v = sorted(mod)[3]
    r = mod[v]
    mod[v] = Rect(r.x1 + 1, r.y1, r.x2 + 1, r.y2)
    tile_rep = check_tiling(RectPlan(mod, plan.bbox))

    cg = res.completed
    rank = dict(res.ordering.rank)
    rank[cg.W], rank[cg.S] = rank[cg.S], rank[cg.W]
    ord_rep = validate_ordering(cg, CanonicalOrdering(rank))

    def witness(rep):
        f = rep.failures()
        return f"{f[0][0]} ({f[0][1][:70]})" if f else "none"

    ok = not rel_rep.verdict and not tile_rep.verdict and not ord_rep.verdict
    return report(
        "C6 mutation sensitivity",
        ok,
        f"label flip {e} -> {witness(rel_rep)}; shift module {v} -> {witness(tile_rep)}; "
        f"swap v1/v2 -> {witness(ord_rep)}",
    )


def criterion_7() -> bool:
    rows = scaling_probe(
        PROBE_SIZES,
        range(PROBE_SEEDS),
        lambda n, seed: generate(GenSpec("L", n, seed)),
        lambda g: run(g, "L"),
    )
    ratios = [r.ratio for r in rows if r.ratio is not None]
    ok = all(x <= PROBE_MAX_RATIO for x in ratios)
    table = ", ".join(f"n={r.n}: {r.median_seconds:.2f}s" for r in rows)
    return report("C7 scaling probe", ok, f"{table}; ratios {[round(x, 2) for x in ratios]} (<= {PROBE_MAX_RATIO})")


def criterion_8(tmp: Path) -> bool:
    graphs = {}
    for name in ("G5", "G6"):
        p = tmp / f"{name}.json"
        p.write_text(json.dumps({"edges": FIXTURES[name], "outer_face": [1, 2, 3]}))
        graphs[name] = (p, "l" if name == "G5" else "t")
    for kind in ("L", "T"):
        p = tmp / f"gen{kind}.json"
        cli_main(["gen", "--kind", kind, "--n", "60", "--seed", "42", "--out", str(p)])
        graphs[f"gen{kind}"] = (p, kind.lower())
    differ = []
    for name, (p, shape) in graphs.items():
        blobs = []
        for i in range(2):
            out, svg = tmp / f"{name}.{i}.json", tmp / f"{name}.{i}.svg"
            cli_main(["plan", str(p), "--shape", shape, "--out", str(out), "--svg", str(svg)])
            blobs.append((out.read_bytes(), svg.read_bytes()))
        if blobs[0] != blobs[1]:
            differ.append(name)
    return report("C8 determinism", not differ, f"{len(graphs)} fixtures x 2 runs, differing: {differ or 'none'}")


def criterion_9(tmp: Path) -> bool:
    p = tmp / "oct.json"
    p.write_text(json.dumps({"edges": FIXTURES["OCT"], "outer_face": [1, 2, 3]}))
    codes = {s: cli_main(["plan", str(p), "--shape", s]) for s in ("l", "t")}
    return report("C9 OCT rejected", codes == {"l": 4, "t": 4}, f"exit codes {codes} (expected 4)")


# ---------------------------------------------------------------------------
# pytest entry points
# ---------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def _show_results(capsys):
    global _CAPSYS
    _CAPSYS = capsys
    yield
    _CAPSYS = None


def test_c1_g5_l_plan():
    assert criterion_1()


def test_c2_g6_t_plan():
    assert criterion_2()


def test_c3_random_l_suite():
    assert criterion_3()


def test_c4_random_t_suite():
    assert criterion_4()


def test_c5_oracle_equivalence():
    assert criterion_5()


def test_c6_mutation_sensitivity():
    assert criterion_6()


@pytest.mark.slow
def test_c7_scaling_probe():
    assert criterion_7()


def test_c8_determinism(tmp_path):
    assert criterion_8(tmp_path)


def test_c9_oct_rejected(tmp_path):
    assert criterion_9(tmp_path)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        tmp = Path(d)
        outcome = [
            criterion_1(),
            criterion_2(),
            criterion_3(),
            criterion_4(),
            criterion_5(),
            criterion_6(),
            criterion_7(),
            criterion_8(tmp),
            criterion_9(tmp),
        ]
    print(f"{sum(outcome)}/{len(outcome)} criteria pass")
    sys.exit(0 if all(outcome) else 1)
