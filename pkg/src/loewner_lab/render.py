"""Deterministic SVG plots of a curve over its rotation-number region map."""

from __future__ import annotations

import re

import numpy as np

from .trigpoly import TWO_PI
from .winding import SENTINEL, Curve, RegionMap

POSITIVE = (178, 24, 43)
NEGATIVE = (33, 102, 172)
ZERO = (247, 247, 247)
MISSING = "#bdbdbd"
CURVE_SAMPLES = 2048


def _num(v: float) -> str:
    s = f"{v:.6g}"
    return "0" if s == "-0" else s


def _mix(a, b, w):
    return "#" + "".join(f"{round(x + (y - x) * w):02x}" for x, y in zip(a, b))


def palette(values) -> dict[int, str]:
    """Diverging colors centered at 0: reds above, blues below, white at 0."""
    vals = sorted(set(int(v) for v in values) - {SENTINEL})
    top = max((abs(v) for v in vals), default=1) or 1
    out = {}
    for v in vals:
        w = 0.25 + 0.75 * abs(v) / top if v else 0.0
        out[v] = _mix(ZERO, POSITIVE if v > 0 else NEGATIVE, w)
    return out


def render_svg(curve: Curve, rmap: RegionMap, colors: dict[int, str] | None = None) -> str:
    """SVG 1.1 document: filled region cells, the curve on top, and a legend.

    The plot area is the curve's bounding box padded by 10% on each side;
    the legend sits in a strip to its right. Equal adjacent cells in a row
    are merged into one rectangle.
    """
    if rmap.values.size == 0:
        raise ValueError("empty region map")
    colors = colors or palette(rmap.values.ravel())
    x0, y0, x1, y1 = curve.bbox
    w, h = x1 - x0, y1 - y0
    px0, px1 = x0 - 0.1 * w, x1 + 0.1 * w
    py0, py1 = y0 - 0.1 * h, y1 + 0.1 * h
    pw, ph = px1 - px0, py1 - py0
    legend_w = 0.3 * pw
    unit = min(pw, ph) / 100.0

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_num(px0)} {_num(-py1)} {_num(pw + legend_w)} {_num(ph)}">',
        f'<rect x="{_num(px0)}" y="{_num(-py1)}" width="{_num(pw + legend_w)}" height="{_num(ph)}" fill="#ffffff"/>',
        '<g shape-rendering="crispEdges">',
    ]
    bx0, by0, bx1, by1 = rmap.bounds
    dx = (bx1 - bx0) / (rmap.nx - 1)
    dy = (by1 - by0) / (rmap.ny - 1)
    for j in range(rmap.ny):
        row = rmap.values[j]
        yc = by0 + j * dy
        i = 0
        while i < rmap.nx:
            k = i
            while k + 1 < rmap.nx and row[k + 1] == row[i]:
                k += 1
            v = int(row[i])
            fill = MISSING if v == SENTINEL else colors[v]
            xa = bx0 + (i - 0.5) * dx
            lines.append(
                f'<rect x="{_num(xa)}" y="{_num(-(yc + dy / 2))}" width="{_num((k - i + 1) * dx)}" '
                f'height="{_num(dy)}" fill="{fill}"/>'
            )
            i = k + 1
    lines.append("</g>")

    t = np.arange(CURVE_SAMPLES + 1) * (TWO_PI / CURVE_SAMPLES)
    xs, ys = curve(t)
    pts = " ".join(f"{_num(a)},{_num(-b)}" for a, b in zip(xs, ys))
    lines.append(
        f'<polyline points="{pts}" fill="none" stroke="#000000" stroke-width="{_num(0.3 * unit)}" '
        'stroke-linejoin="round"/>'
    )

    # swatches fit the plot height whatever the aspect ratio
    size = min(ph / (1.5 * len(colors) + 1), 0.25 * legend_w)
    lx = px1 + 0.1 * legend_w
    ly = -py1 + 0.5 * size
    lines.append(f'<g font-family="sans-serif" font-size="{_num(0.75 * size)}">')
    for n, (v, fill) in enumerate(sorted(colors.items())):
        y = ly + n * 1.5 * size
        lines.append(
            f'<rect x="{_num(lx)}" y="{_num(y)}" width="{_num(size)}" height="{_num(size)}" '
            f'fill="{fill}" stroke="#000000" stroke-width="{_num(0.05 * size)}"/>'
        )
        lines.append(f'<text x="{_num(lx + 1.5 * size)}" y="{_num(y + 0.8 * size)}">{v}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def legend_labels(svg: str) -> list[int]:
    """Integer labels of the legend, in order."""
    return [int(m) for m in re.findall(r"<text [^>]*>(-?\d+)</text>", svg)]
