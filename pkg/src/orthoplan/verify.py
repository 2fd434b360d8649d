"""Independent oracles and end-to-end checks."""

from __future__ import annotations

import itertools
import statistics
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from orthoplan.errors import NotRectilinear, TooLarge
from orthoplan.layout import OrthoPlan, Point, Rect, RectPlan, canonicalize_polygon, classify_shape
from orthoplan.planar import Edge, PlanarGraph, ValidationReport, _connected_without, edge_key
from orthoplan.triangles import Triangle

BRUTE_FORCE_LIMIT = 60


def brute_force_separating_triangles(g: PlanarGraph) -> list[Triangle]:
    """Triangles whose removal disconnects the graph.

    In a triangulated disc a 3-cycle splits the rest iff it has vertices on
    both sides, which is exactly the separating condition; no face data is
    consulted.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {g.n}")
    out = []
    for x, y, z in itertools.combinations(g.vertices, 3):
        if g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(x, z):
            if not _connected_without(g, {x, y, z}):
                out.append(Triangle((x, y, z)))
    return out


# ---------------------------------------------------------------------------
# Plans as polygons
# ---------------------------------------------------------------------------


def plan_polygons(plan: OrthoPlan | RectPlan | Mapping[int, Sequence[Point]]) -> dict[int, tuple[Point, ...]]:
    if isinstance(plan, OrthoPlan):
        return dict(plan.polygons)
    if isinstance(plan, RectPlan):
        return {v: tuple(r.corners()) for v, r in plan.module.items()}
    return {v: tuple(p) for v, p in plan.items()}


def _plan_bbox(plan, polys: Mapping[int, Sequence[Point]]) -> Rect | None:
    bbox = getattr(plan, "bbox", None)
    if bbox is not None or not polys:
        return bbox
    xs = [p[0] for poly in polys.values() for p in poly]
    ys = [p[1] for poly in polys.values() for p in poly]
    return Rect(min(xs), min(ys), max(xs), max(ys))


def _edges(poly: Sequence[Point]):
    k = len(poly)
    for i in range(k):
        yield poly[i], poly[(i + 1) % k]


def plan_adjacency(plan) -> set[Edge]:
    """Pairs of modules sharing a wall of positive length."""
    polys = plan_polygons(plan)
    vert: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    horiz: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for v, poly in polys.items():
        for a, b in _edges(poly):
            if a[0] == b[0]:
                vert[a[0]].append((min(a[1], b[1]), max(a[1], b[1]), v))
            else:
                horiz[a[1]].append((min(a[0], b[0]), max(a[0], b[0]), v))
    out: set[Edge] = set()
    for lines in (vert, horiz):
        for segs in lines.values():
            segs.sort()
            for i, (lo, hi, v) in enumerate(segs):
                j = i + 1
                while j < len(segs) and segs[j][0] < hi:
                    lo2, hi2, w = segs[j]
                    if w != v and min(hi, hi2) - max(lo, lo2) > 0:
                        out.add(edge_key(v, w))
                    j += 1
    return out


def _polygon_rects(poly: Sequence[Point]) -> list[Rect]:
    """Slab decomposition of a simple rectilinear polygon."""
    ys = sorted({p[1] for p in poly})
    verticals = [(a[0], min(a[1], b[1]), max(a[1], b[1])) for a, b in _edges(poly) if a[0] == b[0]]
    rects = []
    for y1, y2 in zip(ys, ys[1:]):
        mid2 = y1 + y2
        xs = sorted(x for x, lo, hi in verticals if 2 * lo < mid2 < 2 * hi)
        for x1, x2 in zip(xs[::2], xs[1::2]):
            if x1 < x2:
                rects.append(Rect(x1, y1, x2, y2))
    return rects


def _overlap_witness(polys: Mapping[int, Sequence[Point]]) -> tuple[int, int, Rect] | None:
    rects = [(v, r) for v, poly in polys.items() for r in _polygon_rects(poly)]
    rects.sort(key=lambda t: t[1].x1)
    for i, (v, r) in enumerate(rects):
        for w, s in rects[i + 1 :]:
            if s.x1 >= r.x2:
                break
            if v == w:
                continue
            x1, x2 = max(r.x1, s.x1), min(r.x2, s.x2)
            y1, y2 = max(r.y1, s.y1), min(r.y2, s.y2)
            if x1 < x2 and y1 < y2:
                return v, w, Rect(x1, y1, x2, y2)
    return None


def _line_mismatch(segs: list[tuple[int, int, int]], expected: Callable[[int, int], int]) -> tuple[int, int, int] | None:
    events: dict[int, int] = defaultdict(int)
    for lo, hi, sign in segs:
        events[lo] += sign
        events[hi] -= sign
    keys = sorted(events)
    net = 0
    for y1, y2 in zip(keys, keys[1:]):
        net += events[y1]
        if net != expected(y1, y2):
            return y1, y2, net
    return None


def check_tiling(plan) -> ValidationReport:
    """Exact tiling of the bounding box, from boundary cancellation.

    Every wall inside the box must be covered by as many edges running one
    way as the other (counterclockwise polygons), and the box outline exactly
    once.  Together with matching areas this forces every point of the box to
    lie in exactly one module.
    """
    rep = ValidationReport()
    try:
        polys = {v: canonicalize_polygon(p) for v, p in plan_polygons(plan).items()}
    except NotRectilinear as exc:
        rep.add("modules are simple polygons", False, str(exc))
        return rep
    bbox = _plan_bbox(plan, polys)
    if not polys:
        rep.add("empty plan", True, "vacuous")
        return rep
    area = sum(abs(_area2(p)) for p in polys.values()) // 2
    rep.add("area sum equals bbox area", area == bbox.area, f"sum={area}, bbox={bbox.area}")
    outside = [v for v, p in polys.items() if any(not (bbox.x1 <= x <= bbox.x2 and bbox.y1 <= y <= bbox.y2) for x, y in p)]
    rep.add("modules inside bbox", not outside, f"outside: {outside[:5]}" if outside else "")

    vert: dict[int, list] = defaultdict(list)
    horiz: dict[int, list] = defaultdict(list)
    for poly in polys.values():
        for a, b in _edges(poly):
            if a[0] == b[0]:
                vert[a[0]].append((min(a[1], b[1]), max(a[1], b[1]), 1 if b[1] > a[1] else -1))
            else:
                horiz[a[1]].append((min(a[0], b[0]), max(a[0], b[0]), 1 if b[0] > a[0] else -1))
    bad = None
    for x, segs in sorted(vert.items()):
        want = -1 if x == bbox.x1 else (1 if x == bbox.x2 else 0)
        hit = _line_mismatch(segs, lambda lo, hi: want if bbox.y1 <= lo and hi <= bbox.y2 else 0)
        if hit:
            bad = f"vertical line x={x}, y in [{hit[0]},{hit[1]}]: net {hit[2]}, expected {want}"
            break
    if bad is None:
        for y, segs in sorted(horiz.items()):
            want = 1 if y == bbox.y1 else (-1 if y == bbox.y2 else 0)
            hit = _line_mismatch(segs, lambda lo, hi: want if bbox.x1 <= lo and hi <= bbox.x2 else 0)
            if hit:
                bad = f"horizontal line y={y}, x in [{hit[0]},{hit[1]}]: net {hit[2]}, expected {want}"
                break
    if bad is not None and len(polys) <= 2000:
        w = _overlap_witness(polys)
        if w is not None:
            bad += f"; modules {w[0]} and {w[1]} overlap on {w[2]}"
    rep.add("walls cancel", bad is None, bad or "")
    return rep


def _area2(pts: Sequence[Point]) -> int:
    s = 0
    for (x1, y1), (x2, y2) in _edges(pts):
        s += x1 * y2 - x2 * y1
    return s


# ---------------------------------------------------------------------------
# End-to-end report
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    stages: dict[str, ValidationReport] = field(default_factory=dict)
    adjacency_diff: dict[str, list[Edge]] = field(default_factory=lambda: {"missing": [], "extra": []})
    shape_table: dict[int, str] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        diff_empty = not self.adjacency_diff["missing"] and not self.adjacency_diff["extra"]
        return diff_empty and all(r.verdict for r in self.stages.values())

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "stages": {k: r.to_dict() for k, r in self.stages.items()},
            "adjacency_diff": {k: [list(e) for e in v] for k, v in self.adjacency_diff.items()},
            "shape_table": {str(v): s for v, s in sorted(self.shape_table.items())},
        }


def check_plan_against_graph(plan, g: PlanarGraph, designated: int | None, shape: str | None) -> VerifyReport:
    report = VerifyReport()
    raw = plan_polygons(plan)
    simple = ValidationReport()
    polys: dict[int, tuple[Point, ...]] = {}
    for v, p in sorted(raw.items()):
        try:
            polys[v] = canonicalize_polygon(p)
        except NotRectilinear as exc:
            simple.add(f"module {v} simple", False, f"{type(exc).__name__}: {exc}")
    if simple.verdict:
        simple.add("modules simple", True, f"{len(polys)} modules")
    report.stages["polygons"] = simple
    report.stages["tiling"] = check_tiling(plan) if simple.verdict else simple

    ids = ValidationReport()
    missing_v = sorted(set(g.vertices) - set(raw))
    extra_v = sorted(set(raw) - set(g.vertices))
    ids.add("module ids match vertices", not missing_v and not extra_v, f"missing {missing_v[:5]}, extra {extra_v[:5]}")
    report.stages["modules"] = ids

    adj = plan_adjacency(polys)
    want = set(g.edges)
    report.adjacency_diff = {"missing": sorted(want - adj), "extra": sorted(adj - want)}
    report.shape_table = {v: classify_shape(p) for v, p in polys.items()}

    shp = ValidationReport()
    if designated is not None and shape is not None:
        got = report.shape_table.get(designated)
        shp.add("designated shape", got == shape, f"module {designated}: {got}, expected {shape}")
    report.stages["designated"] = shp
    return report


# ---------------------------------------------------------------------------
# Timing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeRow:
    n: int
    median_seconds: float
    ratio: float | None


def scaling_probe(
    sizes: Iterable[int],
    seeds: Iterable[int],
    make: Callable[[int, int], object],
    run: Callable[[object], object],
) -> list[ProbeRow]:
    """Median runtime of ``run`` on instances from ``make(n, seed)``."""
    rows: list[ProbeRow] = []
    seeds = list(seeds)
    prev = None
    for n in sizes:
        times = []
        for seed in seeds:
            inst = make(n, seed)
            t0 = time.perf_counter()
            run(inst)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times) if times else 0.0
        rows.append(ProbeRow(n, med, med / prev if prev else None))
        prev = med
    return rows
