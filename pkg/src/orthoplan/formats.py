"""JSON readers and writers for graphs, plans and run artifacts.

Every writer emits sorted keys and fixed indentation, so equal inputs give
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from orthoplan.completion import CompletedGraph
from orthoplan.errors import GraphError
from orthoplan.layout import OrthoPlan, Rect
from orthoplan.planar import PlanarGraph, build_graph
from orthoplan.triangles import RemovalPlan, SiteL, SiteT, Triangle


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _load(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def graph_from_dict(data: Mapping[str, Any]) -> PlanarGraph:
    if not isinstance(data, Mapping):
        raise GraphError("graph file must hold a JSON object")
    edges = data.get("edges")
    if not isinstance(edges, list) or not edges:
        raise GraphError("'edges' must be a nonempty list of [u, v] pairs")
    try:
        elist = [(int(e[0]), int(e[1])) for e in edges if len(e) == 2]
        if len(elist) != len(edges):
            raise GraphError("every edge must have exactly two endpoints")
        vertices = [int(v) for v in data.get("vertices", [])]
        rotation = data.get("rotation")
        if rotation is not None:
            rotation = {int(k): [int(w) for w in nb] for k, nb in rotation.items()}
        outer = data.get("outer_face")
        if outer is not None:
            outer = [int(v) for v in outer]
        labels = {int(k): str(v) for k, v in (data.get("labels") or {}).items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise GraphError(f"malformed graph file: {exc}") from exc
    return build_graph(elist, rotation, outer, labels, vertices)


def graph_to_dict(g: PlanarGraph, directions: Mapping[str, int] | None = None) -> dict:
    out: dict[str, Any] = {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
        "rotation": {str(v): list(g.neighbors(v)) for v in sorted(g.vertices)},
        "outer_face": list(g.outer_face),
    }
    if g.labels:
        out["labels"] = {str(v): s for v, s in sorted(g.labels.items())}
    if directions:
        out["directions"] = dict(directions)
    return out


def completed_to_dict(cg: CompletedGraph) -> dict:
    return graph_to_dict(cg.graph, cg.directions)


def read_graph(path: str | Path) -> PlanarGraph:
    return graph_from_dict(_load(path))


def write_graph(path: str | Path, g: PlanarGraph) -> None:
    write_json(path, graph_to_dict(g))


# ---------------------------------------------------------------------------
# Plans
# ---------------------------------------------------------------------------


def plan_to_dict(plan: OrthoPlan) -> dict:
    bbox = plan.bbox
    modules = []
    for v in sorted(plan.polygons):
        modules.append(
            {
                "id": v,
                "label": plan.labels.get(v, str(v)),
                "polygon": [list(p) for p in plan.polygons[v]],
                "shape": plan.shapes[v],
            }
        )
    return {
        "bbox": [bbox.x1, bbox.y1, bbox.x2, bbox.y2] if bbox else None,
        "modules": modules,
        "designated": plan.designated,
        "merges": [{"from": a, "into": b} for a, b in plan.merges],
    }


def plan_from_dict(data: Mapping[str, Any]) -> OrthoPlan:
    """Load a plan without canonicalizing its polygons; verification does that."""
    try:
        polys = {int(m["id"]): tuple((int(p[0]), int(p[1])) for p in m["polygon"]) for m in data["modules"]}
        shapes = {int(m["id"]): str(m.get("shape", "")) for m in data["modules"]}
        labels = {int(m["id"]): str(m.get("label", m["id"])) for m in data["modules"]}
        box = data.get("bbox")
        bbox = Rect(*map(int, box)) if box else None
        merges = [(int(m["from"]), int(m["into"])) for m in data.get("merges", [])]
        designated = data.get("designated")
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise GraphError(f"malformed plan file: {exc!r}") from exc
    return OrthoPlan({}, polys, shapes, bbox, None if designated is None else int(designated), merges, labels)


def read_plan(path: str | Path) -> OrthoPlan:
    return plan_from_dict(_load(path))


def write_plan(path: str | Path, plan: OrthoPlan) -> None:
    write_json(path, plan_to_dict(plan))


# ---------------------------------------------------------------------------
# Analysis
# ---------------------------------------------------------------------------


def _triangle(t: Triangle) -> list[int]:
    return list(t.vertices)


def site_to_dict(site: SiteL | SiteT) -> dict:
    kind = "L" if isinstance(site, SiteL) else "T"
    return {"kind": kind, "roles": site.roles()}


def removal_to_dict(rp: RemovalPlan) -> dict:
    return {"S": [list(e) for e in rp.S], "Enodes": list(rp.Enodes)}


def analysis_to_dict(
    separating: list[Triangle],
    sites_l: list[SiteL],
    sites_t: list[SiteT],
    removal: RemovalPlan | None = None,
) -> dict:
    return {
        "separating_triangles": [_triangle(t) for t in separating],
        "sites_l": [site_to_dict(s) for s in sites_l],
        "sites_t": [site_to_dict(s) for s in sites_t],
        "removal": removal_to_dict(removal) if removal is not None else None,
    }
