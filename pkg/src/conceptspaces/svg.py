"""Deterministic standalone SVG pictures of 2-D tessellations, concept
regions, trajectories and seating frames."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .dynamics import SeatingFrame, Trajectory
from .regions import Ball, Box, Concept, Halfspaces, Hull, Intersection, Region
from .tessellation import Cell2D, clip_polygon

__all__ = ["region_outline_2d", "render_svg", "emit_svg"]

PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
           "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd")
SIZE = 400.0
PAD = 20.0


def _clip_convex(poly, clipper):
    """Clip ``poly`` by every edge of the counterclockwise convex ``clipper``."""
    n = len(clipper)
    for k in range(n):
        p, q = clipper[k], clipper[(k + 1) % n]
        normal = (q[1] - p[1], -(q[0] - p[0]))
        poly = clip_polygon(poly, normal, normal[0] * p[0] + normal[1] * p[1])
        if not poly:
            break
    return poly


def region_outline_2d(region: Region, n: int = 128) -> list[tuple[float, float]]:
    """Counterclockwise boundary polygon of a 2-D region (balls approximated)."""
    if region.space.ndim != 2:
        raise ValueError("outlines need a 2-D space")
    if isinstance(region, Box):
        (x0, y0), (x1, y1) = region.lo, region.hi
        return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    if isinstance(region, Hull):
        return [tuple(map(float, v)) for v in region.vertices()]
    if isinstance(region, Ball):
        c = region.center.array
        th = 2 * np.pi * np.arange(n) / n
        u = np.stack([np.cos(th), np.sin(th)], axis=1)
        pts = c + region.radius * u / region.space.norm(u)[:, None]
        return [tuple(map(float, p)) for p in pts]
    if isinstance(region, Halfspaces):
        (x0, y0), (x1, y1) = region.space.lower, region.space.upper
        poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        for a, b in zip(region.A, region.b):
            poly = clip_polygon(poly, a, b)
        return poly
    if isinstance(region, Intersection):
        poly = region_outline_2d(region.parts[0], n)
        for part in region.parts[1:]:
            poly = _clip_convex(poly, region_outline_2d(part, n))
        return poly
    raise TypeError(f"cannot outline {type(region).__name__}")


class _Frame:
    def __init__(self, bbox):
        self.x0, self.y0, self.x1, self.y1 = map(float, bbox)
        span = max(self.x1 - self.x0, self.y1 - self.y0) or 1.0
        self.s = (SIZE - 2 * PAD) / span

    def __call__(self, x, y):
        return PAD + (x - self.x0) * self.s, SIZE - PAD - (y - self.y0) * self.s


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pts(frame, poly) -> str:
    return " ".join(f"{_num(a)},{_num(b)}" for a, b in (frame(x, y) for x, y in poly))


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _bbox_of(items):
    xs, ys = [], []
    for it in items:
        if isinstance(it, Cell2D):
            for x, y in it.polygon:
                xs.append(x)
                ys.append(y)
        elif isinstance(it, Concept):
            lo, hi = it.space.lower, it.space.upper
            xs += [lo[0], hi[0]]
            ys += [lo[1], hi[1]]
        elif isinstance(it, Trajectory):
            c = it.coords
            xs += list(c[:, 0])
            ys += list(c[:, 1])
    if isinstance(next(iter(items), None), SeatingFrame) or not xs:
        return (-1.5, -1.5, 1.5, 1.5)
    return (min(xs), min(ys), max(xs), max(ys))


def render_svg(items, bbox=None, highlight=()) -> str:
    """SVG text for a list of Cell2D, Concept, Trajectory or SeatingFrame items.

    Items in ``highlight`` are drawn last with a heavy outline; output is
    byte-identical for identical input.
    """
    items = list(items)
    hl = list(highlight)
    frame = _Frame(bbox or _bbox_of(items + hl))
    body = []
    for k, it in enumerate(items + hl):
        emph = k >= len(items)
        color = PALETTE[k % len(PALETTE)]
        if isinstance(it, Cell2D):
            body.append(f'<polygon points="{_pts(frame, it.polygon)}" fill="{color}" '
                        f'stroke="#333" stroke-width="1"/>')
            px, py = frame(*it.prototype)
            body.append(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="3" fill="#000"/>')
            body.append(f'<text x="{_num(px + 5)}" y="{_num(py - 5)}" font-size="11">'
                        f'{_esc(it.label)}</text>')
        elif isinstance(it, Concept):
            poly = region_outline_2d(it.region)
            style = ('fill="#e41a1c" fill-opacity="0.6" stroke="#000" stroke-width="2.5"'
                     if emph else
                     f'fill="{color}" fill-opacity="0.45" stroke="#333" stroke-width="1"')
            body.append(f'<polygon points="{_pts(frame, poly)}" {style}/>')
            px, py = frame(*it.prototype.coords)
            body.append(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="3" fill="#000"/>')
            body.append(f'<text x="{_num(px + 5)}" y="{_num(py - 5)}" font-size="11">'
                        f'{_esc(it.label)}</text>')
        elif isinstance(it, Trajectory):
            pts = _pts(frame, [tuple(c[:2]) for c in it.coords])
            body.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                        f'stroke-width="2"/>')
            for x, y in (frame(*c[:2]) for c in it.coords):
                body.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="2.5" fill="{color}"/>')
            x, y = frame(*it.coords[-1][:2])
            body.append(f'<text x="{_num(x + 5)}" y="{_num(y - 5)}" font-size="11">'
                        f'{_esc(it.object_id)}</text>')
        elif isinstance(it, SeatingFrame):
            body.extend(_seating(frame, it))
        else:
            raise TypeError(f"cannot draw {type(it).__name__}")
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(SIZE)}" '
            f'height="{_num(SIZE)}" viewBox="0 0 {_num(SIZE)} {_num(SIZE)}">')
    return "\n".join(['<?xml version="1.0" encoding="UTF-8"?>', head,
                      '<rect width="100%" height="100%" fill="#fff"/>', *body, "</svg>"]) + "\n"


def _seating(frame, sf: SeatingFrame):
    out = []
    if sf.kind == "circular":
        cx, cy = frame(0.0, 0.0)
        r = frame.s * 0.8
        out.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(r)}" '
                   f'fill="#deb887" stroke="#333"/>')
        for ident, ang in sf.positions:
            # clockwise from twelve o'clock
            th = math.radians(ang)
            x, y = frame(1.1 * math.sin(th), 1.1 * math.cos(th))
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="10" fill="#80b1d3"/>')
            out.append(f'<text x="{_num(x - 4)}" y="{_num(y + 4)}" font-size="12">'
                       f'{_esc(ident)}</text>')
    else:
        vals = [v for _, v in sf.positions]
        lo, hi = min(vals), max(vals)
        span = (hi - lo) or 1.0
        x0, y0 = frame(-1.2, 0.0)
        x1, _ = frame(1.2, 0.0)
        out.append(f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y0)}" '
                   f'stroke="#333"/>')
        for ident, v in sf.positions:
            x, y = frame(-1.0 + 2.0 * (v - lo) / span, 0.0)
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="10" fill="#80b1d3"/>')
            out.append(f'<text x="{_num(x - 4)}" y="{_num(y + 4)}" font-size="12">'
                       f'{_esc(ident)}</text>')
    return out


def emit_svg(items, path, bbox=None, highlight=()) -> str:
    text = render_svg(items, bbox, highlight)
    Path(path).write_text(text, encoding="utf-8")
    return text
