"""Static SVG rendering of a planar three-body configuration.

The drawing shows the shape outlines, the three pairwise homothety
centers with (i, j) labels, dashed guide lines through each center
touching the extreme points of the shapes (tangent lines for circles),
and the common line through the centers stretched across the frame.
Output is plain SVG 1.1 text, byte-identical across runs for the same
input: every coordinate goes through one fixed-precision formatter and
nothing depends on time, environment, or iteration order.
"""

from __future__ import annotations

import math

from .errors import InvalidInput
from .menelaus import all_pairs
from .shapes import Ball, HalfspaceSet, VertexSet

__all__ = ["render_figure"]

WIDTH = 800
MARGIN = 40.0
BOUNDED_PROBE = 1.0e6


def _fmt(x, nd=4):
    s = f"{float(x):.{nd}f}"
    if float(s) == 0.0:
        s = f"{0.0:.{nd}f}"
    return s


def _convex_hull(points):
    """Hull vertices in counter-clockwise order (monotone chain)."""
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _clip_polygon(polygon, normal, offset):
    """Keep the part of a convex polygon with normal . p >= offset."""
    out = []
    m = len(polygon)
    for k in range(m):
        p, q = polygon[k], polygon[(k + 1) % m]
        fp = normal[0] * p[0] + normal[1] * p[1] - offset
        fq = normal[0] * q[0] + normal[1] * q[1] - offset
        if fp >= 0:
            out.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _halfspace_polygon(shape, box):
    xmin, ymin, xmax, ymax = box
    poly = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
    for c in shape.constraints:
        poly = _clip_polygon(poly, [float(v) for v in c.normal], float(c.offset))
        if not poly:
            return []
    return poly


def _halfspace_corners(shape):
    """Feasible pairwise boundary intersections; the bounded-region vertices."""
    cons = [([float(v) for v in c.normal], float(c.offset)) for c in shape.constraints]
    corners = []
    for a in range(len(cons)):
        for b in range(a + 1, len(cons)):
            (n1, d1), (n2, d2) = cons[a], cons[b]
            det = n1[0] * n2[1] - n1[1] * n2[0]
            if abs(det) < 1e-12:
                continue
            x = (d1 * n2[1] - d2 * n1[1]) / det
            y = (n1[0] * d2 - n2[0] * d1) / det
            if all(n[0] * x + n[1] * y >= d - 1e-9 for n, d in cons):
                corners.append((x, y))
    return corners


def _is_bounded(shape):
    probe = _halfspace_polygon(shape, (-BOUNDED_PROBE, -BOUNDED_PROBE,
                                       BOUNDED_PROBE, BOUNDED_PROBE))
    return bool(probe) and all(
        max(abs(x), abs(y)) < BOUNDED_PROBE / 2 for x, y in probe
    )


def _clip_line(point, direction, box):
    """Liang-Barsky clip of an infinite line against a rectangle."""
    xmin, ymin, xmax, ymax = box
    px, py = point
    dx, dy = direction
    span = 4.0 * (abs(xmax - xmin) + abs(ymax - ymin)) / max(math.hypot(dx, dy), 1e-30)
    t0, t1 = -span, span
    for p, q in ((-dx, px - xmin), (dx, xmax - px), (-dy, py - ymin), (dy, ymax - py)):
        if abs(p) < 1e-30:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    if t0 >= t1:
        return None
    return ((px + t0 * dx, py + t0 * dy), (px + t1 * dx, py + t1 * dy))


def _bbox_points(shapes, centers):
    pts = [tuple(map(float, c)) for c in centers]
    for s in shapes:
        if isinstance(s, Ball):
            cx, cy, r = float(s.center[0]), float(s.center[1]), float(s.radius)
            pts += [(cx - r, cy), (cx + r, cy), (cx, cy - r), (cx, cy + r)]
        elif isinstance(s, VertexSet):
            pts += [(float(v[0]), float(v[1])) for v in s.vertices]
        elif isinstance(s, HalfspaceSet):
            corners = _halfspace_corners(s)
            if corners:
                pts += corners
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    pad = 0.05 * max(xmax - xmin, ymax - ymin, 1.0)
    return xmin - pad, ymin - pad, xmax + pad, ymax + pad


def _tangent_touch_points(center, radius, through):
    """Where the two tangents from an outside point touch the circle."""
    cx, cy = float(center[0]), float(center[1])
    bx, by = float(through[0]), float(through[1])
    ux, uy = bx - cx, by - cy
    ell = math.hypot(ux, uy)
    if ell <= radius:
        return []
    ux, uy = ux / ell, uy / ell
    vx, vy = -uy, ux
    a = radius * radius / ell
    h = radius * math.sqrt(ell * ell - radius * radius) / ell
    return [
        (cx + a * ux + h * vx, cy + a * uy + h * vy),
        (cx + a * ux - h * vx, cy + a * uy - h * vy),
    ]


def _extreme_point(shape, through, box):
    """Farthest drawn point of the shape from a given center."""
    if isinstance(shape, VertexSet):
        candidates = [(float(v[0]), float(v[1])) for v in shape.vertices]
    elif isinstance(shape, HalfspaceSet):
        if not _is_bounded(shape):
            return None
        candidates = _halfspace_polygon(shape, box)
    else:
        return None
    if not candidates:
        return None
    bx, by = float(through[0]), float(through[1])
    return max(candidates, key=lambda p: ((p[0] - bx) ** 2 + (p[1] - by) ** 2, p))


STYLE = """\
  .shape { fill: none; stroke: #1f77b4; }
  .region { fill: #1f77b4; fill-opacity: 0.10; stroke: #1f77b4; }
  .guide { fill: none; stroke: #888888; }
  .monge-line { stroke: #d62728; }
  .center { fill: #d62728; stroke: none; }
  .label { font-family: monospace; font-size: 13px; fill: #333333; }"""


def render_figure(shapes, centers, hyperplane):
    """SVG text for three 2D shapes, their centers, and the common line.

    ``centers`` maps 1-based pairs (i, j) to points; ``hyperplane`` is
    the fitted line (or None, which drops the line but keeps markers).
    """
    shapes = list(shapes)
    if not shapes:
        raise InvalidInput("nothing to draw")
    if any(s.dimension != 2 for s in shapes):
        raise InvalidInput("figures are drawn for 2D configurations only")
    pairs = all_pairs(len(shapes))
    if sorted(centers) != pairs:
        raise InvalidInput("need one center per shape pair")

    box = _bbox_points(shapes, [centers[p] for p in pairs])
    xmin, ymin, xmax, ymax = box
    scale = (WIDTH - 2 * MARGIN) / max(xmax - xmin, 1e-9)
    height = int(round(scale * max(ymax - ymin, 1e-9) + 2 * MARGIN))
    tx = MARGIN - scale * xmin
    ty = height - MARGIN + scale * ymin

    def px(p):
        return scale * float(p[0]) + tx, ty - scale * float(p[1])

    def world(val):
        return _fmt(val)

    sw = _fmt(1.5 / scale, 6)
    sw_thin = _fmt(1.0 / scale, 6)
    sw_line = _fmt(2.0 / scale, 6)
    dash = f"{_fmt(6.0 / scale, 6)} {_fmt(4.0 / scale, 6)}"
    marker_r = _fmt(4.0 / scale, 6)

    body = []

    for s in shapes:
        if isinstance(s, Ball):
            body.append(
                f'<circle class="shape" cx="{world(s.center[0])}" cy="{world(s.center[1])}"'
                f' r="{world(s.radius)}" stroke-width="{sw}"/>'
            )
        elif isinstance(s, VertexSet):
            hull = _convex_hull(s.vertices)
            pts = " ".join(f"{world(x)},{world(y)}" for x, y in hull)
            body.append(f'<polygon class="shape" points="{pts}" stroke-width="{sw}"/>')
        elif isinstance(s, HalfspaceSet):
            poly = _halfspace_polygon(s, box)
            if poly:
                pts = " ".join(f"{world(x)},{world(y)}" for x, y in poly)
                body.append(f'<polygon class="region" points="{pts}" stroke-width="{sw}"/>')
        else:
            raise InvalidInput(f"cannot draw shape of type {type(s).__name__}")

    for (i, j) in pairs:
        b = centers[(i, j)]
        bx, by = float(b[0]), float(b[1])
        larger = shapes[i - 1]
        segments = []
        if isinstance(larger, Ball):
            for t in _tangent_touch_points(larger.center, float(larger.radius), b):
                segments.append((t, (bx, by)))
        else:
            tip = _extreme_point(larger, b, box)
            if tip is not None:
                segments.append((tip, (bx, by)))
        for (x0, y0), (x1, y1) in segments:
            body.append(
                f'<line class="guide" x1="{world(x0)}" y1="{world(y0)}"'
                f' x2="{world(x1)}" y2="{world(y1)}"'
                f' stroke-width="{sw_thin}" stroke-dasharray="{dash}"/>'
            )

    if hyperplane is not None:
        a, c = [float(v) for v in hyperplane.normal], float(hyperplane.offset)
        norm2 = a[0] * a[0] + a[1] * a[1]
        pc = ((xmin + xmax) / 2, (ymin + ymax) / 2)
        t = (c - a[0] * pc[0] - a[1] * pc[1]) / norm2
        foot = (pc[0] + t * a[0], pc[1] + t * a[1])
        seg = _clip_line(foot, (-a[1], a[0]), box)
        if seg is not None:
            (x0, y0), (x1, y1) = seg
            body.append(
                f'<line class="monge-line" x1="{world(x0)}" y1="{world(y0)}"'
                f' x2="{world(x1)}" y2="{world(y1)}" stroke-width="{sw_line}"/>'
            )

    for (i, j) in pairs:
        b = centers[(i, j)]
        body.append(
            f'<circle class="center" cx="{world(b[0])}" cy="{world(b[1])}"'
            f' r="{marker_r}"/>'
        )

    labels = []
    for (i, j) in pairs:
        lx, ly = px(centers[(i, j)])
        labels.append(
            f'<text class="label" x="{_fmt(lx + 7.0)}" y="{_fmt(ly - 7.0)}">({i},{j})</text>'
        )

    group = "\n".join("    " + line for line in body)
    label_block = "\n".join("  " + line for line in labels)
    transform = (
        f"matrix({_fmt(scale, 6)} 0 0 -{_fmt(scale, 6)} {_fmt(tx)} {_fmt(ty)})"
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1"'
        f' width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">\n'
        f"  <style>\n{STYLE}\n  </style>\n"
        f'  <g transform="{transform}">\n'
        f"{group}\n"
        f"  </g>\n"
        f"{label_block}\n"
        f"</svg>\n"
    )
