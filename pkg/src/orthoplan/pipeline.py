"""The L and T floor-plan pipelines, end to end."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from orthoplan.completion import CompletedGraph, complete
from orthoplan.errors import FlipBreaksRel, NoKLSite, NoKTSite, PreconditionViolated
from orthoplan.layout import L_SHAPE, T_SHAPE, OrthoPlan, merge_rooms, rectangular_dual, strip_frame
from orthoplan.ordering import CanonicalOrdering, canonical_order, prioritized_order
from orthoplan.planar import PlanarGraph
from orthoplan.rel import T1, MergeSelector, Rel, adjust_rel_for_l, build_rel, rel_for_t
from orthoplan.triangles import (
    RemovalPlan,
    SiteL,
    SiteT,
    find_kl,
    find_kt,
    modify_kl,
    modify_kt,
    refresh_site_l,
    remove_complex_triangles,
)

log = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    shape: str
    site: SiteL | SiteT
    removal: RemovalPlan
    completed: CompletedGraph
    ordering: CanonicalOrdering
    rel: Rel
    plan: OrthoPlan
    category: str | None = None
    selector: MergeSelector | None = None
    rotation: int = 0
    rejected: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)


class _Clock:
    def __init__(self) -> None:
        self.t = time.perf_counter()
        self.marks: dict[str, float] = {}

    def mark(self, name: str) -> None:
        now = time.perf_counter()
        self.marks[name] = self.marks.get(name, 0.0) + now - self.t
        self.t = now


def run_l(
    g: PlanarGraph, site_index: int = 0, free_basic: int = T1, rotations: tuple[int, ...] = (0, 1, 2, 3)
) -> PipelineResult:
    clock = _Clock()
    sites = find_kl(g)
    if not sites:
        raise NoKLSite("the graph has no interior complex triangle with a single degree-3 vertex")
    if not 0 <= site_index < len(sites):
        raise PreconditionViolated(f"site index {site_index} out of range (0..{len(sites) - 1})")
    site = sites[site_index]
    clock.mark("detect")
    g1, removal = remove_complex_triangles(g, [site.triangle])
    site = refresh_site_l(g1, site)
    g2, site = modify_kl(g1, site)
    clock.mark("eliminate")
    # The corner choice of the completion is free.  When the Case-3 flips
    # cannot keep the labeling regular, try the next rotation of the corners.
    rejected: list[str] = []
    for rotation in rotations:
        cg = complete(g2, rotation)
        clock.mark("complete")
        ordering, category = prioritized_order(cg, site)
        clock.mark("order")
        rel = build_rel(cg, ordering, free_basic)
        try:
            rel, selector = adjust_rel_for_l(rel, site)
        except FlipBreaksRel as exc:
            log.debug("rotation %d rejected: %s", rotation, exc)
            rejected.append(f"rotation {rotation}: {exc}")
            continue
        clock.mark("rel")
        break
    else:
        raise FlipBreaksRel("; ".join(rejected))
    rp = strip_frame(rectangular_dual(rel), cg.directions)
    plan = merge_rooms(rp, removal, site, selector.m, g.labels)
    clock.mark("layout")
    log.info("L plan: site=%s category=%s m=%d rotation=%d", site, category, selector.m, rotation)
    return PipelineResult(
        L_SHAPE, site, removal, cg, ordering, rel, plan, category, selector, rotation, rejected, clock.marks
    )


def run_t(g: PlanarGraph, site_index: int = 0, free_basic: int = T1) -> PipelineResult:
    clock = _Clock()
    sites = find_kt(g)
    if not sites:
        raise NoKTSite("the graph has no pair of complex triangles sharing an edge")
    if not 0 <= site_index < len(sites):
        raise PreconditionViolated(f"site index {site_index} out of range (0..{len(sites) - 1})")
    site = sites[site_index]
    clock.mark("detect")
    g1, removal = remove_complex_triangles(g, list(site.triangles))
    g2, site = modify_kt(g1, site)
    clock.mark("eliminate")
    cg = complete(g2)
    clock.mark("complete")
    ordering = canonical_order(cg)
    clock.mark("order")
    rel = rel_for_t(cg, ordering, free_basic)
    clock.mark("rel")
    rp = strip_frame(rectangular_dual(rel), cg.directions)
    plan = merge_rooms(rp, removal, site, None, g.labels)
    clock.mark("layout")
    log.info("T plan: site=%s", site)
    return PipelineResult(T_SHAPE, site, removal, cg, ordering, rel, plan, timings=clock.marks)


def run(g: PlanarGraph, shape: str, site_index: int = 0, free_basic: int = T1) -> PipelineResult:
    shape = shape.upper()
    if shape == "L":
        return run_l(g, site_index, free_basic)
    if shape == "T":
        return run_t(g, site_index, free_basic)
    raise ValueError(f"shape must be L or T, got {shape!r}")
