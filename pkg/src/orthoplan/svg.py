"""Deterministic SVG drawings of floor plans.

The y axis is flipped so north is up; the viewBox is the plan's bounding box
in grid units, so the picture scales without rounding.
"""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from orthoplan.layout import OrthoPlan, Point

FILL = "#f4f1ea"
HIGHLIGHT = "#f2b134"
STROKE = "#222222"


def centroid(poly: Sequence[Point]) -> tuple[float, float]:
    """Area centroid of a simple polygon."""
    a = cx = cy = 0
    k = len(poly)
    for i in range(k):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % k]
        c = x1 * y2 - x2 * y1
        a += c
        cx += (x1 + x2) * c
        cy += (y1 + y2) * c
    if a == 0:
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        return sum(xs) / k, sum(ys) / k
    return cx / (3 * a), cy / (3 * a)


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(plan: OrthoPlan, width: int = 640) -> str:
    bbox = plan.bbox
    if bbox is None or not plan.polygons:
        return (
            '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1" width="%d" height="%d">\n'
            '<g id="modules"></g>\n</svg>\n' % (width, width)
        )
    w, h = bbox.x2 - bbox.x1, bbox.y2 - bbox.y1
    flip = bbox.y1 + bbox.y2
    font = max(w, h) / 25
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%d %d %d %d" width="%d" height="%d">'
        % (bbox.x1, bbox.y1, w, h, width, round(width * h / w)),
        '<g id="modules" stroke="%s" stroke-width="%s" stroke-linejoin="miter">' % (STROKE, _num(font / 8)),
    ]
    labels = []
    for v in sorted(plan.polygons):
        poly = plan.polygons[v]
        d = "M " + " L ".join(f"{x} {flip - y}" for x, y in poly) + " Z"
        fill = HIGHLIGHT if v == plan.designated else FILL
        extra = ' class="designated"' if v == plan.designated else ""
        lines.append(f'<path id="m{v}" d="{d}" fill="{fill}"{extra}/>')
        cx, cy = centroid(poly)
        text = escape(plan.labels.get(v, str(v)))
        labels.append(
            f'<text x="{_num(cx)}" y="{_num(flip - cy)}" font-size="{_num(font)}" '
            f'text-anchor="middle" dominant-baseline="middle">{text}</text>'
        )
    lines.append("</g>")
    lines.append('<g id="labels" font-family="sans-serif">')
    lines.extend(labels)
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
