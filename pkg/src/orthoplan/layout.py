"""Rectangular duals, room merging and rectilinear shape classes.

Coordinates come from the two st-graphs of a regular edge labeling.  The T1
graph (plus the west and east frame paths) has faces that correspond to
vertical wall lines; a longest-path layering of its dual orders them west to
east and each vertex spans from its leftmost to its rightmost incident face.
The T2 graph gives y-extents the same way.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from orthoplan.errors import NotAdjacent, NotRealizable, NotRectilinear, PreconditionViolated, SelfIntersecting, ZeroAreaEdge
from orthoplan.planar import edge_key
from orthoplan.rel import T1, T2, Rel
from orthoplan.triangles import RemovalPlan, SiteL, SiteT

Point = tuple[int, int]

RECTANGLE, L_SHAPE, T_SHAPE, U_SHAPE, Z_SHAPE, OTHER = "Rectangle", "L", "T", "U", "Z", "Other"


@dataclass(frozen=True, order=True)
class Rect:
    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self) -> None:
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise NotRealizable(f"degenerate rectangle {self}")

    @property
    def area(self) -> int:
        return (self.x2 - self.x1) * (self.y2 - self.y1)

    def corners(self) -> list[Point]:
        return [(self.x1, self.y1), (self.x2, self.y1), (self.x2, self.y2), (self.x1, self.y2)]


@dataclass
class RectPlan:
    module: dict[int, Rect]
    bbox: Rect | None

    @property
    def cells(self) -> dict[int, list[Rect]]:
        return {v: [r] for v, r in self.module.items()}


@dataclass
class OrthoPlan:
    cells: dict[int, list[Rect]]
    polygons: dict[int, tuple[Point, ...]]
    shapes: dict[int, str]
    bbox: Rect | None
    designated: int | None = None
    merges: list[tuple[int, int]] = field(default_factory=list)
    labels: dict[int, str] = field(default_factory=dict)

    @classmethod
    def from_rect_plan(cls, plan: RectPlan, labels: Mapping[int, str] | None = None) -> OrthoPlan:
        cells = plan.cells
        polys = {v: canonicalize_polygon(r.corners()) for v, r in plan.module.items()}
        return cls(cells, polys, {v: RECTANGLE for v in polys}, plan.bbox, None, [], dict(labels or {}))


# ---------------------------------------------------------------------------
# Rectangular dual
# ---------------------------------------------------------------------------


def _faces(rot: Mapping[int, Sequence[int]]) -> dict[tuple[int, int], int]:
    pos = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
    face_of: dict[tuple[int, int], int] = {}
    count = 0
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in face_of:
                continue
            a, b = u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = count
                nb = rot[b]
                a, b = b, nb[(pos[b][a] - 1) % len(nb)]
            count += 1
    return face_of


def _layer(rel: Rel, directed: list[tuple[int, int]], agree_is_source: bool) -> dict[int, tuple[int, int]]:
    """Longest-path extents for every vertex of one st-graph."""
    adj: dict[int, set[int]] = defaultdict(set)
    for t, h in directed:
        adj[t].add(h)
        adj[h].add(t)
    rot = {v: [w for w in rel.graph.neighbors(v) if w in adj[v]] for v in adj}
    face_of = _faces(rot)
    outer = face_of[(rel.W, rel.N)]
    SRC, SNK = -1, -2

    def side(face: int, agrees: bool) -> int:
        if face != outer:
            return face
        return SRC if agrees == agree_is_source else SNK

    succ: dict[int, set[int]] = defaultdict(set)
    for t, h in directed:
        left = side(face_of[(t, h)], True)
        right = side(face_of[(h, t)], False)
        if agree_is_source:
            succ[left].add(right)
        else:
            succ[right].add(left)
    nodes = set(succ) | {w for s in succ.values() for w in s}
    indeg = {x: 0 for x in nodes}
    for s in succ.values():
        for w in s:
            indeg[w] += 1
    d = {x: 0 for x in nodes}
    queue = deque(sorted(x for x in nodes if indeg[x] == 0))
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for w in succ.get(x, ()):
            d[w] = max(d[w], d[x] + 1)
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if seen != len(nodes):
        raise NotRealizable("dual of the st-graph has a cycle")
    out = {}
    heads = {(t, h) for t, h in directed}
    for v, nb in rot.items():
        vals = [d[side(face_of[(v, w)], (v, w) in heads)] for w in nb]
        out[v] = (min(vals), max(vals))
    return out


def rectangular_dual(rel: Rel) -> RectPlan:
    N, E, S, W = rel.N, rel.E, rel.S, rel.W
    t1 = [rel.orientation[e] for e, lab in rel.label.items() if lab == T1]
    t2 = [rel.orientation[e] for e, lab in rel.label.items() if lab == T2]
    xs = _layer(rel, t1 + [(S, W), (W, N), (S, E), (E, N)], agree_is_source=True)
    ys = _layer(rel, t2 + [(W, N), (N, E), (W, S), (S, E)], agree_is_source=False)
    module = {}
    for v in rel.graph.vertices:
        if v not in xs or v not in ys:
            raise NotRealizable(f"vertex {v} missing from a layering")
        (x1, x2), (y1, y2) = xs[v], ys[v]
        module[v] = Rect(x1, y1, x2, y2)
    X1 = min(r.x1 for r in module.values())
    Y1 = min(r.y1 for r in module.values())
    X2 = max(r.x2 for r in module.values())
    Y2 = max(r.y2 for r in module.values())
    return RectPlan(module, Rect(X1, Y1, X2, Y2))


def strip_frame(plan: RectPlan, directions: Mapping[str, int]) -> RectPlan:
    frame = {directions[k] for k in ("N", "E", "S", "W")}
    if not frame <= set(plan.module):
        raise PreconditionViolated("plan has no frame modules")
    module = {v: r for v, r in plan.module.items() if v not in frame}
    if not module:
        return RectPlan({}, None)
    bbox = Rect(
        min(r.x1 for r in module.values()),
        min(r.y1 for r in module.values()),
        max(r.x2 for r in module.values()),
        max(r.y2 for r in module.values()),
    )
    return RectPlan(module, bbox)


# ---------------------------------------------------------------------------
# Polygons
# ---------------------------------------------------------------------------


def _area2(pts: Sequence[Point]) -> int:
    s = 0
    for i in range(len(pts)):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % len(pts)]
        s += x1 * y2 - x2 * y1
    return s


def _segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Whether two axis-parallel closed segments share a point."""
    ax1, ax2 = sorted((p1[0], p2[0]))
    ay1, ay2 = sorted((p1[1], p2[1]))
    bx1, bx2 = sorted((q1[0], q2[0]))
    by1, by2 = sorted((q1[1], q2[1]))
    return ax1 <= bx2 and bx1 <= ax2 and ay1 <= by2 and by1 <= ay2


def canonicalize_polygon(points: Iterable[Sequence[int]], check_crossings: bool = True) -> tuple[Point, ...]:
    """Counterclockwise, collinear points dropped, lexicographic-minimum start.

    ``check_crossings=False`` skips the quadratic self-intersection test for
    outlines that are simple by construction.
    """
    pts: list[Point] = []
    for p in points:
        q = (int(p[0]), int(p[1]))
        if not pts or pts[-1] != q:
            pts.append(q)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 4:
        raise ZeroAreaEdge("a rectilinear polygon needs at least four corners")
    for i in range(len(pts)):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        if a[0] != b[0] and a[1] != b[1]:
            raise NotRectilinear(f"edge {a}->{b} is not axis-parallel")
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                dot = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1])
                if dot < 0:
                    raise ZeroAreaEdge(f"polygon doubles back at {b}")
                del pts[i]
                changed = True
                break
    if len(pts) < 4:
        raise ZeroAreaEdge("polygon collapses to zero area")
    k = len(pts) if check_crossings else 0
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if _segments_cross(pts[i], pts[(i + 1) % k], pts[j], pts[(j + 1) % k]):
                raise SelfIntersecting(f"edges {pts[i]}->{pts[(i + 1) % k]} and {pts[j]}->{pts[(j + 1) % k]} meet")
    a2 = _area2(pts)
    if a2 == 0:
        raise ZeroAreaEdge("polygon has zero area")
    if a2 < 0:
        pts.reverse()
    i = min(range(len(pts)), key=pts.__getitem__)
    return tuple(pts[i:] + pts[:i])


def classify_shape(points: Sequence[Point]) -> str:
    """Shape class from corner count, reflex count and convex gaps."""
    return _classify_canonical(canonicalize_polygon(points))


def _classify_canonical(p: Sequence[Point]) -> str:
    k = len(p)
    reflex = []
    for i in range(k):
        a, b, c = p[i - 1], p[i], p[(i + 1) % k]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        reflex.append(cross < 0)
    r = sum(reflex)
    if (k, r) == (4, 0):
        return RECTANGLE
    if (k, r) == (6, 1):
        return L_SHAPE
    if (k, r) == (8, 2):
        idx = [i for i in range(k) if reflex[i]]
        g1 = idx[1] - idx[0] - 1
        g2 = k - 2 - g1
        gaps = tuple(sorted((g1, g2)))
        return {(0, 6): U_SHAPE, (2, 4): T_SHAPE, (3, 3): Z_SHAPE}.get(gaps, OTHER)
    return OTHER


def outline(cells: Sequence[Rect]) -> tuple[Point, ...]:
    """Boundary of a union of interior-disjoint rectangles as one polygon."""
    xs = sorted({x for r in cells for x in (r.x1, r.x2)})
    ys = sorted({y for r in cells for y in (r.y1, r.y2)})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    filled = set()
    for r in cells:
        for i in range(xi[r.x1], xi[r.x2]):
            for j in range(yi[r.y1], yi[r.y2]):
                if (i, j) in filled:
                    raise SelfIntersecting(f"cells overlap near ({xs[i]},{ys[j]})")
                filled.add((i, j))
    out: dict[Point, list[Point]] = defaultdict(list)
    for i, j in filled:
        x1, x2, y1, y2 = xs[i], xs[i + 1], ys[j], ys[j + 1]
        if (i, j - 1) not in filled:
            out[(x1, y1)].append((x2, y1))
        if (i + 1, j) not in filled:
            out[(x2, y1)].append((x2, y2))
        if (i, j + 1) not in filled:
            out[(x2, y2)].append((x1, y2))
        if (i - 1, j) not in filled:
            out[(x1, y2)].append((x1, y1))
    if any(len(v) > 1 for v in out.values()):
        pinch = next(p for p, v in out.items() if len(v) > 1)
        raise SelfIntersecting(f"union touches itself at {pinch}")
    start = min(out)
    loop = [start]
    cur = out[start][0]
    used = 1
    while cur != start:
        loop.append(cur)
        cur = out[cur][0]
        used += 1
    if used != len(out):
        raise SelfIntersecting("union is not a single simple polygon")
    # one loop without pinches cannot cross itself
    return canonicalize_polygon(loop, check_crossings=False)


# ---------------------------------------------------------------------------
# Merging
# ---------------------------------------------------------------------------


def _wall(r: Rect, s: Rect) -> int:
    total = 0
    if r.x2 == s.x1 or s.x2 == r.x1:
        total += max(0, min(r.y2, s.y2) - max(r.y1, s.y1))
    if r.y2 == s.y1 or s.y2 == r.y1:
        total += max(0, min(r.x2, s.x2) - max(r.x1, s.x1))
    return total


def shared_wall(a: Sequence[Rect], b: Sequence[Rect]) -> int:
    """Total length of wall shared by two cell sets."""
    return sum(_wall(r, s) for r in a for s in b)


def _touches(a: Sequence[Rect], b: Sequence[Rect]) -> bool:
    return any(_wall(r, s) > 0 for r in a for s in b)


def _union_is_rectangle(a: Sequence[Rect], b: Sequence[Rect]) -> bool:
    # disjoint cells fill their bounding box exactly when the areas agree
    cells = [*a, *b]
    x1, y1 = min(r.x1 for r in cells), min(r.y1 for r in cells)
    x2, y2 = max(r.x2 for r in cells), max(r.y2 for r in cells)
    return sum(r.area for r in cells) == (x2 - x1) * (y2 - y1)


def _union_shape(a: Sequence[Rect], b: Sequence[Rect]) -> str | None:
    try:
        return _classify_canonical(outline(list(a) + list(b)))
    except NotRectilinear:
        return None


class _Merger:
    def __init__(self, plan: RectPlan | OrthoPlan) -> None:
        self.cells: dict[int, list[Rect]] = {v: list(c) for v, c in plan.cells.items()}
        self.parent: dict[int, int] = {v: v for v in self.cells}
        self.merges: list[tuple[int, int]] = []

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def merge(self, x: int, into: int) -> None:
        rx, ri = self.find(x), self.find(into)
        if rx == ri:
            return
        if not _touches(self.cells[rx], self.cells[ri]):
            raise NotAdjacent(f"modules {x} and {into} share no wall")
        self.cells[ri].extend(self.cells.pop(rx))
        self.parent[rx] = ri
        self.merges.append((x, into))


def merge_rooms(
    plan: RectPlan,
    removal: RemovalPlan,
    site: SiteL | SiteT,
    m: int | None = None,
    labels: Mapping[int, str] | None = None,
) -> OrthoPlan:
    """Fold subdivision modules back into neighbours, then shape the site."""
    if site.u is None:
        raise PreconditionViolated("site has no u")
    if isinstance(site, SiteL) and m not in (1, 2):
        raise PreconditionViolated("an L site needs the merge selector m")
    mg = _Merger(plan)
    for v in [site.u, *removal.Enodes]:
        if v not in mg.cells:
            raise PreconditionViolated(f"module {v} is missing from the plan")
    guarded = {site.u, site.a, site.b} if isinstance(site, SiteL) else {site.u, site.a, site.c}
    for x, (p, q) in reversed(removal.pairs()):
        options = [p, q]
        free = [o for o in options if mg.find(o) not in guarded]
        if free:
            options = free
        rx = mg.find(x)
        choice = options[0]
        for o in options:
            if _union_is_rectangle(mg.cells[rx], mg.cells[mg.find(o)]):
                choice = o
                break
        mg.merge(x, choice)

    if isinstance(site, SiteL):
        target = site.a if m == 1 else site.b
        mg.merge(site.u, target)
        designated = target
    else:
        ru = mg.find(site.u)
        for target in (site.a, site.c):
            if _union_shape(mg.cells[ru], mg.cells[mg.find(target)]) == T_SHAPE:
                break
        else:
            target = site.a
        mg.merge(site.u, target)
        designated = target

    polys = {v: outline(c) for v, c in mg.cells.items()}
    shapes = {v: _classify_canonical(p) for v, p in polys.items()}
    return OrthoPlan(mg.cells, polys, shapes, plan.bbox, designated, mg.merges, dict(labels or {}))
