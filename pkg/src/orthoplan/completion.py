"""Four-completion: wrap a plane graph with N, E, S, W frame vertices."""

from __future__ import annotations

from dataclasses import dataclass

from orthoplan.errors import ArcMismatch, NotFourConnected, PreconditionViolated, TooManyCips
from orthoplan.planar import PlanarGraph, edge_key
from orthoplan.triangles import find_separating_triangles

DIRECTIONS = ("N", "W", "S", "E")  # counterclockwise around the frame


@dataclass(frozen=True)
class BoundaryArcs:
    """Four arcs covering the outer cycle, listed N, W, S, E counterclockwise.

    Consecutive arcs share their corner vertex.  ``ccw`` is the outer cycle in
    counterclockwise order starting from its smallest vertex.
    """

    arcs: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    corners: tuple[int, int, int, int]
    ccw: tuple[int, ...]

    def arc(self, direction: str) -> tuple[int, ...]:
        return self.arcs[DIRECTIONS.index(direction)]

    def rotated(self, k: int) -> BoundaryArcs:
        """The same corners with the direction names shifted ``k`` steps."""
        k %= 4
        return BoundaryArcs(self.arcs[k:] + self.arcs[:k], self.corners[k:] + self.corners[:k], self.ccw)  # type: ignore[arg-type]


@dataclass(frozen=True)
class CompletedGraph:
    graph: PlanarGraph
    N: int
    E: int
    S: int
    W: int
    arcs: BoundaryArcs
    ns_edge_present: bool = False

    @property
    def directions(self) -> dict[str, int]:
        return {"N": self.N, "E": self.E, "S": self.S, "W": self.W}

    @property
    def frame(self) -> frozenset[int]:
        return frozenset((self.N, self.E, self.S, self.W))


def _ccw_outer(g: PlanarGraph) -> list[int]:
    cyc = list(reversed(g.outer_face))
    i = cyc.index(min(cyc))
    return cyc[i:] + cyc[:i]


def corner_implying_paths(g: PlanarGraph) -> list[tuple[int, int]]:
    """Minimal boundary stretches that must each contain a corner.

    Every chord of the outer cycle cuts the boundary into two sides; a side
    with no corner strictly inside would turn the chord into a separating
    triangle with a frame vertex.  Each side is returned as ``(start, length)``
    over the positions of the counterclockwise outer cycle, covering only its
    interior vertices.  Sides containing another side are dropped.
    """
    cyc = _ccw_outer(g)
    L = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    sides = set()
    for v in cyc:
        for w in g.neighbors(v):
            if w not in pos or pos[w] <= pos[v]:
                continue
            i, j = pos[v], pos[w]
            if j - i in (1, L - 1):
                continue
            sides.add((i + 1, j - i - 1))
            sides.add(((j + 1) % L, L - (j - i) - 1))

    def inside(a: tuple[int, int], b: tuple[int, int]) -> bool:
        off = (a[0] - b[0]) % L
        return off + a[1] <= b[1]

    minimal = [s for s in sides if not any(t != s and inside(t, s) for t in sides)]
    minimal.sort()
    return minimal


def find_boundary_arcs(g: PlanarGraph) -> BoundaryArcs:
    cyc = _ccw_outer(g)
    L = len(cyc)
    if L < 3:
        raise PreconditionViolated("outer face must have length >= 3")
    cips = corner_implying_paths(g)
    if len(cips) > 4:
        raise TooManyCips(f"{len(cips)} corner-implying paths; at most 4 allow a rectangular frame")
    if L == 3:
        positions = [0, 0, 1, 2]
        if cips:
            raise TooManyCips("triangular outer face with chords")
    else:
        chosen: list[int] = []
        for start, _length in cips:
            if start not in chosen:
                chosen.append(start)
        for p in range(L):
            if len(chosen) == 4:
                break
            if p not in chosen:
                chosen.append(p)
        positions = sorted(chosen)
        covered = all(any((p - s) % L < length for p in positions) for s, length in cips)
        if not covered:
            raise TooManyCips("corner-implying paths cannot be covered by four corners")
    arcs = []
    for k in range(4):
        a, b = positions[k], positions[(k + 1) % 4]
        span = (b - a) % L
        arcs.append(tuple(cyc[(a + t) % L] for t in range(span + 1)))
    corners = tuple(cyc[p] for p in positions)
    return BoundaryArcs(tuple(arcs), corners, tuple(cyc))  # type: ignore[arg-type]


def _check_arcs(g: PlanarGraph, arcs: BoundaryArcs) -> None:
    cyc = _ccw_outer(g)
    if tuple(cyc) != arcs.ccw:
        raise ArcMismatch("arcs were computed for a different outer cycle")
    L = len(cyc)
    for k in range(4):
        cur, nxt = arcs.arcs[k], arcs.arcs[(k + 1) % 4]
        if not cur or cur[-1] != nxt[0]:
            raise ArcMismatch(f"arcs {DIRECTIONS[k]} and {DIRECTIONS[(k + 1) % 4]} do not share a corner")
        for x, y in zip(cur, cur[1:]):
            if cyc[(cyc.index(x) + 1) % L] != y:
                raise ArcMismatch(f"arc {DIRECTIONS[k]} is not a counterclockwise boundary path")
    total = sum(len(a) - 1 for a in arcs.arcs)
    if total != L:
        raise ArcMismatch(f"arcs cover {total} boundary edges, outer cycle has {L}")


def four_complete(g: PlanarGraph, arcs: BoundaryArcs) -> CompletedGraph:
    """Add N, E, S, W adjacent to their arcs and to each other in a 4-cycle."""
    _check_arcs(g, arcs)
    base = max(g.vertices)
    ids = {"N": base + 1, "E": base + 2, "S": base + 3, "W": base + 4}
    cyc = list(arcs.ccw)
    L = len(cyc)
    rot = {v: list(nb) for v, nb in g.rotation.items()}

    # directions touching each boundary vertex, in counterclockwise order
    touching: dict[int, list[str]] = {v: [] for v in cyc}
    for k, d in enumerate(DIRECTIONS):
        arc = arcs.arcs[k]
        for v in arc:
            touching[v].append(d)
    for i, v in enumerate(cyc):
        p = cyc[i - 1]
        ds = touching[v]
        # arcs ending at v come before arcs starting at v
        ends = [d for d in ds if arcs.arc(d)[-1] == v and arcs.arc(d)[0] != v]
        both = [d for d in ds if arcs.arc(d)[0] == v and arcs.arc(d)[-1] == v]
        starts = [d for d in ds if arcs.arc(d)[0] == v and arcs.arc(d)[-1] != v]
        middle = [d for d in ds if d not in ends and d not in both and d not in starts]
        order = ends + both + middle + starts
        nb = rot[v]
        at = nb.index(p) + 1
        nb[at:at] = [ids[d] for d in order]

    for k, d in enumerate(DIRECTIONS):
        prev_d, next_d = DIRECTIONS[k - 1], DIRECTIONS[(k + 1) % 4]
        rot[ids[d]] = [ids[prev_d], ids[next_d]] + list(reversed(arcs.arcs[k]))

    labels = dict(g.labels)
    labels.update({ids[d]: d for d in DIRECTIONS})
    outer = (ids["N"], ids["E"], ids["S"], ids["W"])
    graph = PlanarGraph(rot, outer, labels)
    if graph.walk_face(ids["N"], ids["E"]) != outer:
        raise ArcMismatch("frame does not close into the outer face")
    return CompletedGraph(graph, ids["N"], ids["E"], ids["S"], ids["W"], arcs)


def add_ns_edge(cg: CompletedGraph) -> CompletedGraph:
    """Join N and S around the east side, leaving (N, S, W) as the outer face."""
    if cg.ns_edge_present:
        raise PreconditionViolated("the (N,S) edge is already present")
    rot = {v: list(nb) for v, nb in cg.graph.rotation.items()}
    N, E, S, W = cg.N, cg.E, cg.S, cg.W
    rot[N].insert(rot[N].index(E) + 1, S)
    rot[S].insert(rot[S].index(W) + 1, N)
    graph = PlanarGraph(rot, (N, S, W), cg.graph.labels)
    bad = find_separating_triangles(graph)
    if bad:
        raise NotFourConnected(f"completed graph has separating triangles, e.g. {bad[0].vertices}")
    return CompletedGraph(graph, N, E, S, W, cg.arcs, True)


def without_ns_edge(cg: CompletedGraph) -> PlanarGraph:
    """The completed graph with (N, S) removed again and frame as outer face."""
    if not cg.ns_edge_present:
        return cg.graph
    rot = {v: list(nb) for v, nb in cg.graph.rotation.items()}
    rot[cg.N].remove(cg.S)
    rot[cg.S].remove(cg.N)
    return PlanarGraph(rot, (cg.N, cg.E, cg.S, cg.W), cg.graph.labels)


def complete(g: PlanarGraph, rotation: int = 0) -> CompletedGraph:
    return add_ns_edge(four_complete(g, find_boundary_arcs(g).rotated(rotation)))


def frame_edges(cg: CompletedGraph) -> set[tuple[int, int]]:
    N, E, S, W = cg.N, cg.E, cg.S, cg.W
    return {edge_key(N, E), edge_key(E, S), edge_key(S, W), edge_key(W, N)}
