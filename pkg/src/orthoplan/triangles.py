"""Separating triangles, K_L / K_T sites, and the graph surgery that removes them.

A K_L site is a separating triangle ``(a, b, c)`` enclosing a single degree-3
vertex ``d``; a K_T site is two such triangles ``(a, b, c)`` and ``(a, c, d)``
sharing the edge ``(a, c)`` with interior vertices ``e`` and ``f``.  Vertex
roles run counterclockwise.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace
from typing import Iterable

from orthoplan.errors import EdgeOnOuterFace, PreconditionViolated, Unhittable
from orthoplan.planar import Edge, Embedding, PlanarGraph, edge_key


@dataclass(frozen=True, order=True)
class Triangle:
    vertices: tuple[int, int, int]
    is_face: bool = False

    @classmethod
    def of(cls, x: int, y: int, z: int, is_face: bool = False) -> Triangle:
        return cls(tuple(sorted((x, y, z))), is_face)  # type: ignore[arg-type]

    @property
    def edges(self) -> tuple[Edge, Edge, Edge]:
        x, y, z = self.vertices
        return (x, y), (x, z), (y, z)


@dataclass(frozen=True, order=True)
class SiteL:
    a: int
    b: int
    c: int
    d: int
    C1: int
    u: int | None = None

    @property
    def chosen_edge(self) -> Edge:
        return (self.a, self.b)

    @property
    def triangle(self) -> Triangle:
        return Triangle.of(self.a, self.b, self.c)

    @property
    def frozen(self) -> frozenset[int]:
        """The six vertices held back from the first ordering phase."""
        assert self.u is not None
        return frozenset((self.a, self.b, self.c, self.d, self.u, self.C1))

    def roles(self) -> dict[str, int | None]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "C1": self.C1, "u": self.u}


@dataclass(frozen=True, order=True)
class SiteT:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    u: int | None = None

    @property
    def shared_edge(self) -> Edge:
        return (self.a, self.c)

    @property
    def triangles(self) -> tuple[Triangle, Triangle]:
        return Triangle.of(self.a, self.b, self.c), Triangle.of(self.a, self.c, self.d)

    def roles(self) -> dict[str, int | None]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "e": self.e, "f": self.f, "u": self.u}


@dataclass
class RemovalPlan:
    S: list[Edge] = field(default_factory=list)
    Enodes: list[int] = field(default_factory=list)

    def pairs(self) -> list[tuple[int, Edge]]:
        return list(zip(self.Enodes, self.S))

    def extend(self, other: RemovalPlan) -> None:
        self.S.extend(other.S)
        self.Enodes.extend(other.Enodes)


# ---------------------------------------------------------------------------
# Detection
# ---------------------------------------------------------------------------


def all_triangles(g: PlanarGraph) -> list[tuple[int, int, int]]:
    """Every 3-cycle as a sorted triple.

    Edges are oriented from lower to higher (degree, id) so that each vertex
    has few out-neighbours in a planar graph.
    """
    key = {v: (g.degree(v), v) for v in g.vertices}
    out: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges:
        if key[u] < key[v]:
            out[u].add(v)
        else:
            out[v].add(u)
    tris = []
    for v in g.vertices:
        ov = out[v]
        for w in ov:
            for x in out[w]:
                if x in ov:
                    tris.append(tuple(sorted((v, w, x))))
    tris.sort()
    return tris  # type: ignore[return-value]


def find_separating_triangles(g: PlanarGraph) -> list[Triangle]:
    """3-cycles that are neither an inner face nor the outer boundary."""
    faces = g.triangle_faces
    outer = tuple(sorted(g.outer_face)) if len(g.outer_face) == 3 else None
    return [Triangle(t) for t in all_triangles(g) if t not in faces and t != outer]


def outer_triangle_blocks(g: PlanarGraph) -> bool:
    """True when a triangular outer boundary encloses other vertices.

    Such a boundary cannot be realised by rectangles, so the outer triangle is
    broken exactly like a separating one.
    """
    return len(g.outer_face) == 3 and g.n > 3


def single_interior_vertex(g: PlanarGraph, tri: Triangle) -> int | None:
    """The degree-3 vertex whose neighbourhood is exactly ``tri``, if any."""
    x, y, z = tri.vertices
    want = frozenset(tri.vertices)
    outer = set(g.outer_face)
    hits = [
        w
        for w in g.nbr_set(x) & g.nbr_set(y) & g.nbr_set(z)
        if g.degree(w) == 3 and g.nbr_set(w) == want and w not in outer
    ]
    if len(hits) != 1:
        return None
    return hits[0]


def _ccw(g: PlanarGraph, p: int, q: int, inside: int) -> bool:
    """Whether ``inside`` is the apex of the face left of dart ``p -> q``."""
    return g.next_cw(q, p) == inside


def find_kl(g: PlanarGraph, triangles: list[Triangle] | None = None) -> list[SiteL]:
    sites = []
    for tri in triangles if triangles is not None else find_separating_triangles(g):
        d = single_interior_vertex(g, tri)
        if d is None:
            continue
        for x, y in tri.edges:
            if g.is_outer_edge(x, y):
                continue
            third = next(v for v in tri.vertices if v not in (x, y))
            common = (g.nbr_set(x) & g.nbr_set(y)) - {third, d}
            if not common:
                continue
            a, b = (x, y) if _ccw(g, x, y, d) else (y, x)
            sites.append(SiteL(a=a, b=b, c=third, d=d, C1=min(common)))
    sites.sort(key=lambda s: (s.triangle.vertices, min(s.a, s.b), max(s.a, s.b)))
    return sites


def find_kt(g: PlanarGraph, triangles: list[Triangle] | None = None) -> list[SiteT]:
    by_edge: dict[Edge, list[tuple[Triangle, int]]] = {}
    for tri in triangles if triangles is not None else find_separating_triangles(g):
        d = single_interior_vertex(g, tri)
        if d is None:
            continue
        for e in tri.edges:
            by_edge.setdefault(e, []).append((tri, d))
    sites = []
    for (a, c), group in sorted(by_edge.items()):
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                (t1, i1), (t2, i2) = group[i], group[j]
                if i1 == i2:
                    continue
                o1 = next(v for v in t1.vertices if v not in (a, c))
                o2 = next(v for v in t2.vertices if v not in (a, c))
                if o1 == o2:
                    continue
                # (a, b, c) counterclockwise puts its interior vertex left of c -> a
                if _ccw(g, c, a, i1):
                    b, e, d, f = o1, i1, o2, i2
                else:
                    b, e, d, f = o2, i2, o1, i1
                sites.append(SiteT(a=a, b=b, c=c, d=d, e=e, f=f))
    sites.sort(key=lambda s: (s.shared_edge, s.b, s.d))
    return sites


def check_site_l(g: PlanarGraph, site: SiteL) -> None:
    """Raise unless the site's roles are consistent in ``g``."""
    a, b, c, d, C1 = site.a, site.b, site.c, site.d, site.C1
    for v in (a, b, c, d, C1):
        if v not in g:
            raise PreconditionViolated(f"vertex {v} not in graph")
    if not g.has_edge(a, b):
        raise PreconditionViolated(f"edge ({a},{b}) is absent")
    if g.nbr_set(d) != frozenset((a, b, c)):
        raise PreconditionViolated(f"nbd({d}) != {{{a},{b},{c}}}")
    if g.is_outer_edge(a, b):
        raise PreconditionViolated(f"edge ({a},{b}) lies on the outer face")
    if set(g.apexes(a, b)) != {d, C1}:
        raise PreconditionViolated(f"C1={C1} is not the face apex of ({a},{b}) opposite {d}")


def refresh_site_l(g: PlanarGraph, site: SiteL) -> SiteL:
    """Re-derive ``C1`` after surgery elsewhere in the graph."""
    if not g.has_edge(site.a, site.b):
        raise PreconditionViolated(f"edge ({site.a},{site.b}) is absent")
    p, q = g.apexes(site.a, site.b)
    if site.d not in (p, q):
        raise PreconditionViolated(f"{site.d} is not a face apex of ({site.a},{site.b})")
    return replace(site, C1=q if p == site.d else p)


# ---------------------------------------------------------------------------
# Removal edge selection
# ---------------------------------------------------------------------------


def _protected_interiors(g: PlanarGraph, protect: Iterable[Triangle]) -> set[int]:
    out = set()
    for tri in protect:
        d = single_interior_vertex(g, tri)
        if d is not None:
            out.add(d)
    return out


def select_removal_edges(g: PlanarGraph, protect: Iterable[Triangle] = ()) -> RemovalPlan:
    """Greedy hitting set over the unprotected separating triangles.

    Each round takes the edge that hits the most still-unhit triangles, ties
    going to the smallest edge.  A triangular outer boundary counts as one more
    triangle to hit.  Protected triangle edges and spokes to their interior
    vertices are never chosen.
    """
    protect = {Triangle(t.vertices) for t in protect}
    forbidden: set[Edge] = set()
    for tri in protect:
        forbidden.update(tri.edges)
    for d in _protected_interiors(g, protect):
        forbidden.update(edge_key(d, w) for w in g.neighbors(d))

    targets = [t for t in find_separating_triangles(g) if Triangle(t.vertices) not in protect]
    if outer_triangle_blocks(g):
        targets.append(Triangle.of(*g.outer_face))

    cover: dict[Edge, list[int]] = {}
    for i, tri in enumerate(targets):
        allowed = [e for e in tri.edges if e not in forbidden]
        if not allowed:
            raise Unhittable(f"every edge of triangle {tri.vertices} is protected")
        for e in allowed:
            cover.setdefault(e, []).append(i)

    hit = [False] * len(targets)
    count = {e: len(ts) for e, ts in cover.items()}
    heap = [(-c, e) for e, c in count.items()]
    heapq.heapify(heap)
    chosen: list[Edge] = []
    remaining = len(targets)
    while remaining and heap:
        negc, e = heapq.heappop(heap)
        if -negc != count[e]:
            continue
        if count[e] == 0:
            break
        chosen.append(e)
        for i in cover[e]:
            if hit[i]:
                continue
            hit[i] = True
            remaining -= 1
            for f in targets[i].edges:
                if f in count:
                    count[f] -= 1
                    if f != e and count[f] > 0:
                        heapq.heappush(heap, (-count[f], f))
        count[e] = 0
    return RemovalPlan(S=chosen)


# ---------------------------------------------------------------------------
# Surgery
# ---------------------------------------------------------------------------


def _outer_dart_set(emb: Embedding) -> set[tuple[int, int]]:
    walk = emb.walk(*emb.outer_dart)
    return {(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))}


def _subdivide(emb: Embedding, p: int, q: int, x: int, outer: set[tuple[int, int]]) -> bool:
    """Replace edge ``(p, q)`` by a new vertex ``x``.

    An inner edge gives ``x`` the four vertices of the merged quadrilateral.
    An outer edge puts ``x`` on the boundary next to ``p``, ``q`` and the
    inner apex.  Returns whether the outer face changed.
    """
    if (p, q) in outer and (q, p) in outer:
        raise EdgeOnOuterFace(f"edge ({p},{q}) is a bridge of the outer face")
    if (p, q) in outer or (q, p) in outer:
        if (p, q) in outer:
            p, q = q, p
        # now the face left of p -> q is the inner triangle (p, q, r)
        r = emb.next_cw(q, p)
        emb.delete_edge(p, q)
        walk = emb.walk(q, r)
        emb.insert_vertex(x, walk, 0, 3)
        emb.outer_dart = (x, p)
        return True
    s = emb.next_cw(p, q)
    emb.delete_edge(p, q)
    walk = emb.walk(p, s)
    if len(walk) != 4:
        raise PreconditionViolated(f"faces beside ({p},{q}) are not triangles")
    emb.insert_vertex(x, walk, 0, 4)
    return False


def eliminate_complex_triangles(g: PlanarGraph, plan: RemovalPlan) -> tuple[PlanarGraph, RemovalPlan]:
    """Subdivide every edge of ``plan.S``; new vertices get fresh ids."""
    if not plan.S:
        return g, RemovalPlan(S=[], Enodes=[])
    emb = Embedding.from_graph(g)
    outer = _outer_dart_set(emb)
    enodes = []
    next_id = emb.new_vertex_id()
    for p, q in plan.S:
        if q not in emb.rot.get(p, ()):
            raise PreconditionViolated(f"edge ({p},{q}) not present")
        x = next_id
        next_id += 1
        if _subdivide(emb, p, q, x, outer):
            outer = _outer_dart_set(emb)
        enodes.append(x)
    return emb.freeze(labels=g.labels), RemovalPlan(S=list(plan.S), Enodes=enodes)


def remove_complex_triangles(
    g: PlanarGraph, protect: Iterable[Triangle] = (), max_rounds: int = 8
) -> tuple[PlanarGraph, RemovalPlan]:
    """Repeat selection and subdivision until only protected triangles remain."""
    protect = list(protect)
    total = RemovalPlan()
    for _ in range(max_rounds):
        plan = select_removal_edges(g, protect)
        if not plan.S:
            return g, total
        g, done = eliminate_complex_triangles(g, plan)
        total.extend(done)
    raise Unhittable(f"separating triangles remain after {max_rounds} rounds")


def _insert_on_edge(g: PlanarGraph, p: int, q: int, expected: set[int]) -> tuple[PlanarGraph, int]:
    if not g.has_edge(p, q):
        raise PreconditionViolated(f"edge ({p},{q}) is absent")
    if g.is_outer_edge(p, q):
        raise PreconditionViolated(f"edge ({p},{q}) lies on the outer face")
    if set(g.apexes(p, q)) != expected:
        raise PreconditionViolated(f"faces beside ({p},{q}) have apexes {g.apexes(p, q)}, expected {sorted(expected)}")
    emb = Embedding.from_graph(g)
    u = emb.new_vertex_id()
    _subdivide(emb, p, q, u, set())
    return emb.freeze(labels=g.labels), u


def _check_no_other_triangles(g: PlanarGraph, allowed: set[Triangle]) -> None:
    extra = [t for t in find_separating_triangles(g) if Triangle(t.vertices) not in allowed]
    if extra or outer_triangle_blocks(g):
        what = [t.vertices for t in extra[:3]] or [g.outer_face]
        raise PreconditionViolated(f"graph still has complex triangles outside the site: {what}")


def modify_kl(g: PlanarGraph, site: SiteL) -> tuple[PlanarGraph, SiteL]:
    """Delete ``(a, b)`` and add ``u`` adjacent to ``C1, d, a, b``."""
    if site.u is not None:
        raise PreconditionViolated("site already modified")
    check_site_l(g, site)
    _check_no_other_triangles(g, {site.triangle})
    g1, u = _insert_on_edge(g, site.a, site.b, {site.d, site.C1})
    return g1, replace(site, u=u)


def modify_kt(g: PlanarGraph, site: SiteT) -> tuple[PlanarGraph, SiteT]:
    """Delete ``(a, c)`` and add ``u`` adjacent to ``e, f, a, c``."""
    if site.u is not None:
        raise PreconditionViolated("site already modified")
    for v in site.roles().values():
        if v is not None and v not in g:
            raise PreconditionViolated(f"vertex {v} not in graph")
    if g.nbr_set(site.e) != frozenset((site.a, site.b, site.c)) or g.nbr_set(site.f) != frozenset(
        (site.a, site.c, site.d)
    ):
        raise PreconditionViolated("interior vertices do not match the site roles")
    _check_no_other_triangles(g, set(site.triangles))
    g1, u = _insert_on_edge(g, site.a, site.c, {site.e, site.f})
    return g1, replace(site, u=u)
