"""Canonical orderings of completed 4-connected graphs.

Ranks are assigned top-down: ``N`` gets rank ``n`` and the remaining graph is
peeled one contour vertex at a time, as in the standard linear-time
construction.  ``W`` and ``S`` are fixed as ranks 1 and 2.

The contour is the outer boundary of the still-unranked part minus the edge
``(W, S)``, kept as a doubly linked path from ``W`` to ``S``.  A contour
vertex is eligible when it has at least two ranked neighbours and no chord,
a chord being a graph edge between non-consecutive contour vertices.  Chords
to ``W`` and ``S`` count.
"""

from __future__ import annotations

import copy
import heapq
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from orthoplan.completion import CompletedGraph
from orthoplan.errors import NoCategory, PreconditionViolated, Stuck
from orthoplan.planar import ValidationReport, edge_key
from orthoplan.triangles import SiteL

log = logging.getLogger(__name__)

CATEGORIES: dict[str, tuple[str, str, str, str]] = {
    "A": ("C1", "u", "d", "a"),
    "B": ("d", "u", "a", "C1"),
    "C": ("d", "u", "C1", "a"),
    "D": ("a", "d", "u", "C1"),
    "E": ("C1", "a", "u", "d"),
    "F": ("a", "C1", "u", "d"),
}


@dataclass(frozen=True)
class CanonicalOrdering:
    rank: dict[int, int]
    category: str | None = None
    trace: tuple[int, ...] = ()  # vertices in the order they were ranked, from rank n down

    @property
    def order(self) -> list[int]:
        """Vertices by increasing rank."""
        return sorted(self.rank, key=self.rank.__getitem__)

    def to_dict(self) -> dict:
        return {
            "rank": {str(v): r for v, r in sorted(self.rank.items())},
            "category": self.category,
            "trace": list(self.trace),
        }


@dataclass(frozen=True)
class PriorityList:
    sequence: tuple[int, int, int, int]

    @classmethod
    def for_category(cls, site: SiteL, category: str) -> PriorityList:
        roles = site.roles()
        return cls(tuple(roles[r] for r in CATEGORIES[category]))  # type: ignore[arg-type]


@dataclass
class OrderState:
    """Bookkeeping of the top-down labeling; copied before each category try."""

    ch: dict[int, int]
    vi: dict[int, int]
    St: dict[int, bool]
    frozen: frozenset[int]
    next_rank: int
    rank: dict[int, int]
    trace: list[int]
    nxt: dict[int, int]
    prv: dict[int, int]
    heap: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.next_rank < 3


class _Labeler:
    """Shared machinery over one completed graph."""

    def __init__(self, cg: CompletedGraph) -> None:
        if not cg.ns_edge_present:
            raise PreconditionViolated("canonical ordering needs the (N,S) edge")
        self.cg = cg
        self.g = cg.graph
        self.W, self.S, self.N, self.E = cg.W, cg.S, cg.N, cg.E
        self.base = edge_key(self.W, self.S)

    def initial(self, frozen: Iterable[int]) -> OrderState:
        frozen = frozenset(frozen)
        if frozen & {self.W, self.S, self.N, self.E}:
            raise PreconditionViolated("frame vertices cannot be frozen")
        g = self.g
        n = g.n
        st = {v: False for v in g.vertices}
        st[self.W] = st[self.S] = True
        vi = {v: 0 for v in g.vertices}
        vi[self.N], vi[self.E] = 2, 1
        rank = {self.W: 1, self.S: 2}
        # the whole graph: contour W, N, S
        nxt = {self.W: self.N, self.N: self.S}
        prv = {self.S: self.N, self.N: self.W}
        ch = {v: 0 for v in g.vertices}
        state = OrderState(ch, vi, st, frozen, n, rank, [], nxt, prv, [self.N])
        return state

    # -- queries -------------------------------------------------------------

    def eligible(self, s: OrderState, v: int) -> bool:
        return not s.St[v] and s.ch[v] == 0 and s.vi[v] >= 2 and (v in s.nxt or v in s.prv)

    def _pop_eligible(self, s: OrderState, allowed) -> int | None:
        """Smallest eligible vertex accepted by ``allowed``; others stay queued."""
        skipped = []
        found = None
        seen = set()
        while s.heap:
            v = heapq.heappop(s.heap)
            if v in seen:
                continue
            seen.add(v)
            if not self.eligible(s, v):
                continue
            if allowed(v):
                found = v
                break
            skipped.append(v)
        for v in skipped:
            heapq.heappush(s.heap, v)
        return found

    # -- the labeling step -----------------------------------------------------

    def _on_contour(self, s: OrderState, v: int) -> bool:
        return v in s.nxt or v in s.prv

    def _consecutive(self, s: OrderState, x: int, y: int) -> bool:
        return s.nxt.get(x) == y or s.nxt.get(y) == x

    def take(self, s: OrderState, v: int) -> None:
        g = self.g
        r = s.next_rank
        s.rank[v] = r
        s.St[v] = True
        s.trace.append(v)
        s.next_rank -= 1
        L, R = s.prv[v], s.nxt[v]

        # chords at v vanish with it
        for w in g.neighbors(v):
            if w != L and w != R and self._on_contour(s, w) and edge_key(v, w) != self.base:
                s.ch[w] -= 1
                if s.ch[w] == 0:
                    heapq.heappush(s.heap, w)

        # neighbours strictly between L and R, counterclockwise after L
        nb = g.neighbors(v)
        k = len(nb)
        i = nb.index(L)
        new: list[int] = []
        j = (i + 1) % k
        while nb[j] != R:
            new.append(nb[j])
            j = (j + 1) % k
        for w in new:
            if s.St[w] or self._on_contour(s, w):
                raise Stuck(f"contour broke while ranking {v}", state={"vertex": v, "neighbour": w})

        del s.nxt[v], s.prv[v]
        chain = [L] + new + [R]
        for x, y in zip(chain, chain[1:]):
            s.nxt[x] = y
            s.prv[y] = x

        if not new and g.has_edge(L, R) and edge_key(L, R) != self.base:
            # the chord (L, R) became a contour edge
            s.ch[L] -= 1
            s.ch[R] -= 1
            heapq.heappush(s.heap, L)
            heapq.heappush(s.heap, R)

        for w in g.neighbors(v):
            if not s.St[w]:
                s.vi[w] += 1
        newset = set(new)
        for w in new:
            for x in g.neighbors(w):
                if x in newset and x < w:
                    continue
                if not self._on_contour(s, x) or self._consecutive(s, w, x):
                    continue
                if edge_key(w, x) == self.base:
                    continue
                s.ch[w] += 1
                s.ch[x] += 1
        for w in g.neighbors(v):
            if not s.St[w]:
                heapq.heappush(s.heap, w)

    def run(self, s: OrderState, pick) -> OrderState:
        while not s.complete:
            v = pick(s)
            if v is None:
                break
            self.take(s, v)
        return s


def canon_label_partial(cg: CompletedGraph, frozen: Iterable[int] = ()) -> OrderState:
    """Rank every vertex it can while leaving ``frozen`` vertices untouched."""
    lab = _Labeler(cg)
    s = lab.initial(frozen)
    return lab.run(s, lambda st: lab._pop_eligible(st, lambda v: v not in st.frozen))


def _finish(s: OrderState, category: str | None) -> CanonicalOrdering:
    return CanonicalOrdering(dict(s.rank), category, tuple(s.trace))


def canonical_order(cg: CompletedGraph) -> CanonicalOrdering:
    s = canon_label_partial(cg, ())
    if not s.complete:
        raise Stuck(
            f"no eligible vertex with {s.next_rank - 2} vertices left",
            state=_dump(s),
        )
    return _finish(s, None)


def _dump(s: OrderState) -> dict:
    contour = []
    v = next((x for x in s.nxt if x not in s.prv), None)
    while v is not None:
        contour.append(v)
        v = s.nxt.get(v)
    return {
        "next_rank": s.next_rank,
        "contour": contour,
        "ch": {v: s.ch[v] for v in contour},
        "vi": {v: s.vi[v] for v in contour},
    }


def try_category(
    cg: CompletedGraph, state: OrderState, pl: PriorityList | Sequence[int], category: str | None = None
) -> CanonicalOrdering | None:
    """Resume a paused labeling, preferring the priority vertices in order."""
    seq = tuple(pl.sequence if isinstance(pl, PriorityList) else pl)
    if len(seq) != 4 or len(set(seq)) != 4:
        raise PreconditionViolated(f"priority list must name four distinct vertices, got {seq}")
    if state.complete:
        return _finish(state, category)
    lab = _Labeler(cg)
    s = copy.deepcopy(state)
    members = set(seq)
    for v in seq:
        heapq.heappush(s.heap, v)

    def pick(st: OrderState) -> int | None:
        nxt = next((p for p in seq if not st.St[p]), None)
        if nxt is not None and lab.eligible(st, nxt):
            return nxt
        return lab._pop_eligible(st, lambda v: v not in members)

    lab.run(s, pick)
    if not s.complete:
        return None
    return _finish(s, category)


def prioritized_order(cg: CompletedGraph, site: SiteL) -> tuple[CanonicalOrdering, str]:
    if not isinstance(site, SiteL):
        raise PreconditionViolated("prioritized ordering needs an L site")
    if site.u is None:
        raise PreconditionViolated("site has not been modified; u is missing")
    paused = canon_label_partial(cg, site.frozen)
    log.debug("paused at rank %d", paused.next_rank)
    for cat in CATEGORIES:
        pl = PriorityList.for_category(site, cat)
        got = try_category(cg, paused, pl, cat)
        if got is not None:
            return got, cat
    raise NoCategory(f"no category A-F completes the ordering (paused at rank {paused.next_rank})")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

LITERAL_CHECK_LIMIT = 40


def validate_ordering(cg: CompletedGraph, ordering: CanonicalOrdering) -> ValidationReport:
    """Check the shelling conditions bottom-up, prefix by prefix.

    The contour of ``G_{j-1}`` is simulated as a path from ``W`` to ``S``;
    the lower neighbours of ``v_j`` must form a run of at least two
    consecutive contour vertices.  Small graphs additionally get a literal
    biconnectivity check of every prefix.
    """
    rep = ValidationReport()
    g = cg.graph
    rank = ordering.rank
    n = g.n
    ok = rep.add("bijection", sorted(rank.values()) == list(range(1, n + 1)) and set(rank) == set(g.vertices))
    if not ok:
        return rep
    rep.add("v1 = W", rank[cg.W] == 1, f"rank(W)={rank[cg.W]}")
    rep.add("v2 = S", rank[cg.S] == 2, f"rank(S)={rank[cg.S]}")
    rep.add("vn = N", rank[cg.N] == n, f"rank(N)={rank[cg.N]}")
    if not rep.verdict:
        return rep
    order = ordering.order
    nxt = {cg.W: cg.S}
    prv = {cg.S: cg.W}
    first_bad = None
    for j in range(3, n + 1):
        v = order[j - 1]
        lower = [w for w in g.neighbors(v) if rank[w] < j]
        higher = len(g.neighbors(v)) - len(lower)
        if len(lower) < 2:
            first_bad = (j, v, f"only {len(lower)} lower neighbours")
            break
        ls = set(lower)
        if any(w not in nxt and w not in prv for w in lower):
            first_bad = (j, v, "a lower neighbour is off the contour")
            break
        links = sum(1 for w in lower if nxt.get(w) in ls)
        if links != len(lower) - 1:
            first_bad = (j, v, "lower neighbours are not consecutive on the contour")
            break
        if j <= n - 2 and higher < 2:
            first_bad = (j, v, f"only {higher} higher neighbours")
            break
        left = next(w for w in lower if prv.get(w) not in ls)
        right = left
        while nxt.get(right) in ls:
            right = nxt[right]
        cur = nxt[left]
        while cur != right:
            following = nxt.pop(cur)
            prv.pop(cur)
            cur = following
        nxt[left], prv[v], nxt[v], prv[right] = v, left, right, v
    if first_bad is None:
        rep.add("contour conditions", True, f"all {n - 2} prefixes")
    else:
        j, v, why = first_bad
        rep.add("contour conditions", False, f"prefix j={j} (vertex {v}): {why}")
    if n <= LITERAL_CHECK_LIMIT and first_bad is None:
        G = g.to_networkx()
        bad = None
        for j in range(3, n):
            sub = G.subgraph(order[:j])
            if not nx.is_biconnected(sub) or not sub.has_edge(cg.W, cg.S):
                bad = j
                break
        rep.add("prefix biconnectivity", bad is None, "" if bad is None else f"G_{bad} is not biconnected")
    return rep
