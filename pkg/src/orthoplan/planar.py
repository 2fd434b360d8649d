"""Plane graphs with an explicit combinatorial embedding.

A graph is stored as a rotation system: for every vertex the counterclockwise
cyclic order of its neighbours.  Faces are traced dart by dart keeping the
face on the left, so inner faces of a drawing come out counterclockwise and
the outer face comes out clockwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from orthoplan.errors import (
    GraphError,
    InconsistentRotation,
    NonPlanar,
    TooFewVertices,
    UnknownOuterFace,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so that its smallest vertex comes first."""
    i = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[i:]) + tuple(seq[:i])


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    vertices: tuple[int, ...]
    is_outer: bool = False

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class ValidationReport:
    """Named pass/fail checks; the verdict passes only if every check does."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return bool(ok)

    @property
    def verdict(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in self.checks],
        }

    def __bool__(self) -> bool:
        return self.verdict


class PlanarGraph:
    """Immutable plane graph given by a counterclockwise rotation system."""

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        outer_face: Sequence[int],
        labels: Mapping[int, str] | None = None,
    ) -> None:
        self._rot: dict[int, tuple[int, ...]] = {v: tuple(nb) for v, nb in rotation.items()}
        self.outer_face: tuple[int, ...] = tuple(outer_face)
        self.labels: dict[int, str] = dict(labels or {})

    # -- basic queries -----------------------------------------------------

    @property
    def rotation(self) -> dict[int, tuple[int, ...]]:
        return self._rot

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._rot))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, v) for u, nb in self._rot.items() for v in nb}))

    @cached_property
    def _nbr_sets(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(nb) for v, nb in self._rot.items()}

    @cached_property
    def _pos(self) -> dict[int, dict[int, int]]:
        return {v: {w: i for i, w in enumerate(nb)} for v, nb in self._rot.items()}

    @property
    def n(self) -> int:
        return len(self._rot)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def nbr_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._rot and v in self._nbr_sets[u]

    def __contains__(self, v: object) -> bool:
        return v in self._rot

    def next_ccw(self, v: int, w: int) -> int:
        """Neighbour of ``v`` following ``w`` counterclockwise."""
        nb = self._rot[v]
        return nb[(self._pos[v][w] + 1) % len(nb)]

    def next_cw(self, v: int, w: int) -> int:
        nb = self._rot[v]
        return nb[(self._pos[v][w] - 1) % len(nb)]

    def face_next(self, u: int, v: int) -> tuple[int, int]:
        """Next dart along the face lying left of the dart ``u -> v``."""
        return v, self.next_cw(v, u)

    def walk_face(self, u: int, v: int) -> tuple[int, ...]:
        seq = [u]
        a, b = self.face_next(u, v)
        limit = 2 * self.m + 1
        while (a, b) != (u, v):
            seq.append(a)
            a, b = self.face_next(a, b)
            limit -= 1
            if limit < 0:
                raise InconsistentRotation(f"face walk from {u}->{v} does not close")
        return tuple(seq)

    @cached_property
    def _face_index(self) -> tuple[list[tuple[int, ...]], dict[tuple[int, int], int]]:
        faces: list[tuple[int, ...]] = []
        dart_face: dict[tuple[int, int], int] = {}
        for u in self.vertices:
            for v in self._rot[u]:
                if (u, v) in dart_face:
                    continue
                walk = self.walk_face(u, v)
                idx = len(faces)
                for i, a in enumerate(walk):
                    b = walk[(i + 1) % len(walk)]
                    if (a, b) in dart_face:
                        raise InconsistentRotation(f"dart {a}->{b} lies on two faces")
                    dart_face[(a, b)] = idx
                faces.append(walk)
        return faces, dart_face

    def face_left_of(self, u: int, v: int) -> tuple[int, ...]:
        faces, dart_face = self._face_index
        return faces[dart_face[(u, v)]]

    @cached_property
    def outer_darts(self) -> frozenset[tuple[int, int]]:
        f = self.outer_face
        return frozenset((f[i], f[(i + 1) % len(f)]) for i in range(len(f)))

    def is_outer_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.outer_darts or (v, u) in self.outer_darts

    @cached_property
    def triangle_faces(self) -> frozenset[tuple[int, int, int]]:
        """Sorted vertex triples of the inner triangular faces."""
        outer = canonical_cycle(self.outer_face)
        out = set()
        for walk in self._face_index[0]:
            if len(walk) == 3 and canonical_cycle(walk) != outer:
                out.add(tuple(sorted(walk)))
        return frozenset(out)

    def apexes(self, u: int, v: int) -> tuple[int, int]:
        """Third vertices of the faces on either side of edge ``(u, v)``.

        Only meaningful when both faces are triangles.
        """
        return self.next_cw(v, u), self.next_cw(u, v)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(self.edges)
        return G

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def with_rotation(self, rotation: Mapping[int, Sequence[int]], outer_face: Sequence[int]) -> PlanarGraph:
        labels = {v: s for v, s in self.labels.items() if v in rotation}
        return PlanarGraph(rotation, outer_face, labels)

    def __repr__(self) -> str:
        return f"PlanarGraph(n={self.n}, m={self.m}, outer={self.outer_face})"


# ---------------------------------------------------------------------------
# Mutable working copy used by the graph surgery in other modules
# ---------------------------------------------------------------------------


class Embedding:
    """Mutable rotation system supporting local surgery."""

    def __init__(self, rotation: Mapping[int, Sequence[int]], outer_dart: tuple[int, int]) -> None:
        self.rot: dict[int, list[int]] = {v: list(nb) for v, nb in rotation.items()}
        self.outer_dart = outer_dart

    @classmethod
    def from_graph(cls, g: PlanarGraph) -> Embedding:
        f = g.outer_face
        return cls(g.rotation, (f[0], f[1]))

    def next_cw(self, v: int, w: int) -> int:
        nb = self.rot[v]
        return nb[nb.index(w) - 1]

    def walk(self, u: int, v: int) -> list[int]:
        seq = [u]
        a, b = v, self.next_cw(v, u)
        while (a, b) != (u, v):
            seq.append(a)
            a, b = b, self.next_cw(b, a)
        return seq

    def new_vertex_id(self) -> int:
        return max(self.rot) + 1

    def insert_vertex(self, x: int, walk: Sequence[int], start: int, count: int) -> None:
        """Add ``x`` inside the face ``walk``, joined to ``count`` consecutive
        walk vertices beginning at index ``start``."""
        k = len(walk)
        attached = [walk[(start + i) % k] for i in range(count)]
        for i in range(count):
            j = (start + i) % k
            fi, nxt = walk[j], walk[(j + 1) % k]
            nb = self.rot[fi]
            nb.insert(nb.index(nxt) + 1, x)
        self.rot[x] = attached

    def delete_edge(self, u: int, v: int) -> None:
        self.rot[u].remove(v)
        self.rot[v].remove(u)

    def freeze(self, outer_dart: tuple[int, int] | None = None, labels: Mapping[int, str] | None = None) -> PlanarGraph:
        u, v = outer_dart or self.outer_dart
        outer = tuple(self.walk(u, v))
        return PlanarGraph(self.rot, outer, labels)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _check_simple(edges: Sequence[Sequence[int]]) -> list[Edge]:
    if not edges:
        raise GraphError("edge list is empty")
    seen: set[Edge] = set()
    out: list[Edge] = []
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"malformed edge {e!r}")
        u, v = int(e[0]), int(e[1])
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex id in edge {e!r}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        k = edge_key(u, v)
        if k in seen:
            raise GraphError(f"parallel edge {k}")
        seen.add(k)
        out.append(k)
    return out


def _match_face(faces: Iterable[tuple[int, ...]], target: Sequence[int]) -> tuple[int, ...] | None:
    want = canonical_cycle(target)
    want_rev = canonical_cycle(tuple(reversed(target)))
    for walk in faces:
        c = canonical_cycle(walk)
        if c == want or c == want_rev:
            return walk
    return None


def build_graph(
    edges: Sequence[Sequence[int]],
    rotation: Mapping[int, Sequence[int]] | None = None,
    outer_face: Sequence[int] | None = None,
    labels: Mapping[int, str] | None = None,
    vertices: Iterable[int] | None = None,
) -> PlanarGraph:
    """Build a plane graph from an edge list.

    A supplied rotation system is adopted verbatim after checking that it
    closes into faces satisfying Euler's formula.  Otherwise a planar
    embedding is computed.  Without an explicit outer face the longest face
    is used, ties going to the lexicographically smallest vertex sequence.
    """
    elist = _check_simple(edges)
    adj: dict[int, set[int]] = {}
    for u, v in elist:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    for v in vertices or ():
        if int(v) not in adj:
            raise GraphError(f"isolated vertex {v}")

    G = nx.Graph()
    G.add_nodes_from(sorted(adj))
    G.add_edges_from(sorted(elist))
    if not nx.is_connected(G):
        raise GraphError("graph is not connected")

    if rotation is not None:
        rot = {int(v): [int(w) for w in nb] for v, nb in rotation.items()}
        if set(rot) != set(adj):
            raise InconsistentRotation("rotation vertices differ from edge-list vertices")
        for v, nb in rot.items():
            if len(nb) != len(set(nb)) or set(nb) != adj[v]:
                raise InconsistentRotation(f"rotation at {v} does not list exactly its neighbours")
    else:
        planar, emb = nx.check_planarity(G)
        if not planar:
            raise NonPlanar("graph is not planar")
        # networkx reports clockwise order; we store counterclockwise
        rot = {v: list(reversed(list(emb.neighbors_cw_order(v)))) for v in sorted(adj)}

    draft = PlanarGraph(rot, ())
    try:
        faces, _ = draft._face_index
    except InconsistentRotation:
        raise
    n, m = len(rot), len(elist)
    if n - m + len(faces) != 2:
        raise InconsistentRotation(f"Euler check failed: V-E+F = {n}-{m}+{len(faces)}")

    if outer_face is not None:
        walk = _match_face(faces, [int(v) for v in outer_face])
        if walk is None:
            raise UnknownOuterFace(f"no face matches {tuple(outer_face)}")
    else:
        walk = min(faces, key=lambda f: (-len(f), canonical_cycle(f)))
    return PlanarGraph(rot, canonical_cycle(walk), labels)


def faces(g: PlanarGraph) -> list[Face]:
    """All faces, ordered by smallest vertex and then by length."""
    outer = canonical_cycle(g.outer_face)
    out = []
    for walk in g._face_index[0]:
        c = canonical_cycle(walk)
        out.append(Face(c, c == outer))
    out.sort(key=lambda f: (f.vertices[0], len(f.vertices), f.vertices))
    return out


# ---------------------------------------------------------------------------
# Validation and connectivity
# ---------------------------------------------------------------------------


def validate_ptg(g: PlanarGraph) -> ValidationReport:
    report = ValidationReport()
    G = g.to_networkx()
    report.add("biconnected", g.n >= 3 and nx.is_biconnected(G), f"n={g.n}")
    outer = g.outer_darts

    def is_outer(f: tuple[int, ...]) -> bool:
        return (f[0], f[1 % len(f)]) in outer

    bad = [f for f in g._face_index[0] if not is_outer(f) and len(f) != 3]
    report.add("inner faces triangular", not bad, f"non-triangular: {[canonical_cycle(f) for f in bad[:3]]}" if bad else "")
    report.add("outer length >= 3", len(g.outer_face) >= 3, f"outer length {len(g.outer_face)}")
    simple_outer = len(set(g.outer_face)) == len(g.outer_face)
    report.add("outer face is a simple cycle", simple_outer, "")
    return report


def _connected_without(g: PlanarGraph, removed: frozenset[int] | set[int]) -> bool:
    rest = [v for v in g.vertices if v not in removed]
    if not rest:
        return True
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(rest)


EXHAUSTIVE_CUT_LIMIT = 40


def connectivity_at_least(g: PlanarGraph, k: int, exhaustive: bool | None = None) -> bool:
    """True iff no vertex cut of size < ``k`` exists.

    Small graphs are checked by removing every vertex subset of size < k;
    larger ones use max-flow node connectivity.
    """
    if not 1 <= k <= 4:
        raise ValueError("k must be in 1..4")
    if g.n <= k:
        raise TooFewVertices(f"need more than {k} vertices, got {g.n}")
    if exhaustive is None:
        exhaustive = g.n <= EXHAUSTIVE_CUT_LIMIT
    if not exhaustive:
        return nx.node_connectivity(g.to_networkx()) >= k
    verts = g.vertices
    for size in range(k):
        for cut in itertools.combinations(verts, size):
            if not _connected_without(g, set(cut)):
                return False
    return True
