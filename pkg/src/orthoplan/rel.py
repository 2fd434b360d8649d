"""Regular edge labelings built from canonical orderings.

``T1`` edges are vertical adjacencies oriented south to north, ``T2`` edges
horizontal adjacencies oriented west to east.  Around every interior vertex
the counterclockwise rotation reads: incoming T1, outgoing T2, outgoing T1,
incoming T2, each group contiguous and nonempty.

For a vertex ``v_k`` the lower neighbours ``C_k`` are read counterclockwise
starting just after its last higher neighbour, which puts the ``W`` side
first.  The basic edge comes from the lowest-ranked member of ``C_k``; edges
from members before it are T2, after it T1.  The basic edge itself is T2 when
it is the first member, T1 when it is the last, and free otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from orthoplan.completion import CompletedGraph, without_ns_edge
from orthoplan.errors import ContourBroken, FlipBreaksRel, PreconditionViolated, RelInvalid
from orthoplan.ordering import CanonicalOrdering
from orthoplan.planar import Edge, PlanarGraph, ValidationReport, edge_key
from orthoplan.triangles import SiteL

T1, T2 = 1, 2


@dataclass(frozen=True)
class Fan:
    lower: tuple[int, ...]  # C_k, W side first
    higher: tuple[int, ...]  # R_k, counterclockwise
    base: int  # index into ``lower`` of the basic edge's tail

    @property
    def lp(self) -> int:
        return self.lower[0]

    @property
    def rp(self) -> int:
        return self.lower[-1]

    @property
    def le(self) -> int | None:
        return self.higher[0] if self.higher else None

    @property
    def re(self) -> int | None:
        return self.higher[-1] if self.higher else None


@dataclass(frozen=True)
class Rel:
    graph: PlanarGraph  # completed graph without (N, S)
    N: int
    E: int
    S: int
    W: int
    orientation: dict[Edge, tuple[int, int]]
    label: dict[Edge, int]

    @property
    def frame(self) -> frozenset[int]:
        return frozenset((self.N, self.E, self.S, self.W))

    def tail_head(self, u: int, v: int) -> tuple[int, int]:
        return self.orientation[edge_key(u, v)]

    def label_of(self, u: int, v: int) -> int:
        return self.label[edge_key(u, v)]

    def edges_of(self, kind: int) -> list[tuple[int, int]]:
        return sorted(self.orientation[e] for e, lab in self.label.items() if lab == kind)

    def to_dict(self) -> dict:
        return {
            "edges": [
                {"tail": t, "head": h, "label": f"T{self.label[e]}"}
                for e, (t, h) in sorted(self.orientation.items())
            ]
        }


@dataclass(frozen=True)
class MergeSelector:
    m: int
    case: int
    flips_applied: tuple[Edge, ...] = field(default_factory=tuple)


def _rank_check(cg: CompletedGraph, ordering: CanonicalOrdering) -> None:
    if set(ordering.rank) != set(cg.graph.vertices):
        raise PreconditionViolated("ordering does not cover the completed graph")


def orient_edges(cg: CompletedGraph, ordering: CanonicalOrdering) -> dict[Edge, tuple[int, int]]:
    """Interior edges directed from lower to higher rank; frame edges skipped."""
    _rank_check(cg, ordering)
    g = without_ns_edge(cg)
    rank = ordering.rank
    frame = {edge_key(cg.N, cg.E), edge_key(cg.E, cg.S), edge_key(cg.S, cg.W), edge_key(cg.W, cg.N)}
    out = {}
    for u, v in g.edges:
        if (u, v) in frame:
            continue
        out[(u, v)] = (u, v) if rank[u] < rank[v] else (v, u)
    return out


def fan_data(cg: CompletedGraph, ordering: CanonicalOrdering) -> dict[int, Fan]:
    """Lower and higher neighbour fans of every vertex of rank 3 .. n-2."""
    _rank_check(cg, ordering)
    g = without_ns_edge(cg)
    rank = ordering.rank
    n = g.n
    fans = {}
    for v in g.vertices:
        k = rank[v]
        if k < 3 or k > n - 2:
            continue
        nb = g.neighbors(v)
        d = len(nb)
        up = [rank[w] > k for w in nb]
        starts = [i for i in range(d) if up[i - 1] and not up[i]]
        if len(starts) != 1:
            raise ContourBroken(f"vertex {v} (rank {k}): lower neighbours are not one contiguous fan")
        i0 = starts[0]
        lower, higher = [], []
        for t in range(d):
            w = nb[(i0 + t) % d]
            (higher if up[(i0 + t) % d] else lower).append(w)
        if len(lower) < 2:
            raise ContourBroken(f"vertex {v} (rank {k}) has fewer than two lower neighbours")
        base = min(range(len(lower)), key=lambda i: rank[lower[i]])
        fans[v] = Fan(tuple(lower), tuple(higher), base)
    return fans


def build_rel(cg: CompletedGraph, ordering: CanonicalOrdering, free_basic: int = T1) -> Rel:
    if free_basic not in (T1, T2):
        raise ValueError("free_basic must be T1 or T2")
    orientation = orient_edges(cg, ordering)
    fans = fan_data(cg, ordering)
    g = without_ns_edge(cg)
    label: dict[Edge, int] = {}
    for v, fan in fans.items():
        last = len(fan.lower) - 1
        for i, w in enumerate(fan.lower):
            if i < fan.base:
                lab = T2
            elif i > fan.base:
                lab = T1
            elif i == 0:
                lab = T2
            elif i == last:
                lab = T1
            else:
                lab = free_basic
            label[edge_key(v, w)] = lab
    for w in g.neighbors(cg.N):
        if edge_key(cg.N, w) in orientation:
            label[edge_key(cg.N, w)] = T1
    for w in g.neighbors(cg.E):
        if edge_key(cg.E, w) in orientation:
            label[edge_key(cg.E, w)] = T2
    missing = set(orientation) - set(label)
    if missing:
        raise RelInvalid(f"edges left unlabeled: {sorted(missing)[:3]}")
    rel = Rel(g, cg.N, cg.E, cg.S, cg.W, orientation, label)
    rep = validate_rel(rel)
    if not rep.verdict:
        raise RelInvalid("; ".join(f"{n}: {d}" for n, d in rep.failures()))
    return rel


def rel_for_t(cg: CompletedGraph, ordering: CanonicalOrdering, free_basic: int = T1) -> Rel:
    return build_rel(cg, ordering, free_basic)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _group(rel: Rel, v: int, w: int) -> int:
    """0 in-T1, 1 out-T2, 2 out-T1, 3 in-T2."""
    e = edge_key(v, w)
    tail, _ = rel.orientation[e]
    out = tail == v
    if rel.label[e] == T1:
        return 2 if out else 0
    return 1 if out else 3


def local_ok(rel: Rel, v: int) -> tuple[bool, str]:
    """Whether the rotation at interior vertex ``v`` has the four-group pattern."""
    nb = rel.graph.neighbors(v)
    try:
        gs = [_group(rel, v, w) for w in nb]
    except KeyError as exc:
        return False, f"unlabeled edge at {v}: {exc}"
    d = len(gs)
    changes = 0
    for i in range(d):
        a, b = gs[i], gs[(i + 1) % d]
        if a == b:
            continue
        if b != (a + 1) % 4:
            return False, f"group {a} followed by group {b}"
        changes += 1
    if changes != 4:
        return False, f"{changes} group changes instead of 4"
    return True, ""


def validate_rel(rel: Rel) -> ValidationReport:
    rep = ValidationReport()
    bad = []
    for v in rel.graph.vertices:
        if v in rel.frame:
            continue
        ok, why = local_ok(rel, v)
        if not ok:
            bad.append((v, why))
    rep.add("interior rotation pattern", not bad, "; ".join(f"vertex {v}: {w}" for v, w in bad[:5]))

    def boundary(x: int, want_label: int, want_out: bool, name: str) -> None:
        wrong = []
        for w in rel.graph.neighbors(x):
            e = edge_key(x, w)
            if e not in rel.label:
                continue
            tail, _ = rel.orientation[e]
            if rel.label[e] != want_label or (tail == x) != want_out:
                wrong.append(w)
        rep.add(f"boundary {name}", not wrong, f"bad edges to {wrong[:5]}" if wrong else "")

    boundary(rel.N, T1, False, "N")
    boundary(rel.W, T2, True, "W")
    boundary(rel.S, T1, True, "S")
    boundary(rel.E, T2, False, "E")
    return rep


# ---------------------------------------------------------------------------
# Flips for the L module
# ---------------------------------------------------------------------------


def _relabel(rel: Rel, changes: list[tuple[int, int, int]]) -> Rel:
    """Apply label changes, orienting the changed edges so their endpoints stay valid."""
    label = dict(rel.label)
    orientation = dict(rel.orientation)
    edges = [edge_key(p, q) for p, q, _ in changes]
    for (p, q, lab), e in zip(changes, edges):
        label[e] = lab
    ends = sorted({v for e in edges for v in e if v not in rel.frame})
    for mask in range(1 << len(edges)):
        for i, e in enumerate(edges):
            t, h = rel.orientation[e]
            orientation[e] = (h, t) if mask >> i & 1 else (t, h)
        trial = replace(rel, label=dict(label), orientation=dict(orientation))
        if all(local_ok(trial, v)[0] for v in ends):
            return trial
    raise FlipBreaksRel(f"no orientation of {edges} keeps their endpoints valid")


def adjust_rel_for_l(rel: Rel, site: SiteL) -> tuple[Rel, MergeSelector]:
    if site.u is None:
        raise PreconditionViolated("site has no u")
    a, b, u, C1 = site.a, site.b, site.u, site.C1
    x1, x2 = rel.label_of(a, u), rel.label_of(a, C1)
    if x1 != x2:
        return rel, MergeSelector(1, 1)
    x3, x4 = rel.label_of(b, u), rel.label_of(b, C1)
    if x3 != x4:
        return rel, MergeSelector(2, 2)
    p, q = rel.graph.apexes(a, C1)
    x = q if p == u else p
    if u not in (p, q) or not rel.graph.has_edge(x, C1):
        raise PreconditionViolated(f"no second common neighbour of ({a},{C1}) besides u")
    x5, x6 = rel.label_of(C1, x), rel.label_of(a, x)
    changes = []
    if x2 != x5:
        changes.append((x, C1, x2))
    if x6 != x2:
        changes.append((a, C1, x6))
    out = _relabel(rel, changes) if changes else rel
    flips = tuple(edge_key(p, q) for p, q, _ in changes)
    rep = validate_rel(out)
    if not rep.verdict:
        raise FlipBreaksRel("; ".join(f"{n}: {d}" for n, d in rep.failures()))
    return out, MergeSelector(1, 3, flips)
