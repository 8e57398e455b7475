"""Mountain-range renderers: fixed-width ASCII grids and SVG documents.

Both renderers emit exactly the entry set of the range (the SVG embeds the
lattice data on each marker so it can be parsed back losslessly), and both
are byte-deterministic for a fixed input.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import EmptyRange
from .mountain import MountainRange


def ascii_mountain(mr: MountainRange) -> str:
    """tb rows descending, rot columns centered at 0, '.' for empty cells."""
    if not mr.entries:
        raise EmptyRange("mountain range has no entries")
    t_max = max(t for _, t in mr.entries)
    r_max = max(abs(r) for r, _ in mr.entries)
    width = max(len(str(m)) for m in mr.entries.values())
    rots = range(-r_max, r_max + 1)
    lines = []
    for t in range(t_max, mr.tb_min - 1, -1):
        cells = []
        for r in rots:
            m = mr.entries.get((r, t))
            cells.append(str(m).rjust(width) if m else ".".rjust(width))
        lines.append(f"tb={t:>4} | " + " ".join(cells))
    if mr.truncated:
        lines.append(" " * 8 + "| " + " ".join("~".rjust(width) for _ in rots))
    marker = [" ".rjust(width) if r else "0".rjust(width) for r in rots]
    lines.append(" " * 8 + "  " + " ".join(marker) + "   (rot)")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Overlay:
    """A polyline overlay with optional labels at its vertices."""

    points: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()
    closed: bool = False


def ifsurg_overlay(p: int, q: int, tb_min: int) -> list[Overlay]:
    """Region boundaries for cables with slope in (0, 1): the top region
    between the peaks, the two side cones, and the bottom cone, with the
    six labeled corner points."""
    pq = p * q
    top = Overlay(
        points=((q - p, pq), (p - q, pq), (0, pq - p + q)),
        labels=(f"({q - p},{pq})", f"({p - q},{pq})", f"(0,{pq - p + q})"),
        closed=True,
    )
    drop = (pq - q) - tb_min
    right = Overlay(
        points=((p - drop, tb_min), (p, pq - q), (p + drop, tb_min)),
        labels=("", f"({p},{pq - q})", ""),
    )
    left = Overlay(
        points=((-p - drop, tb_min), (-p, pq - q), (-p + drop, tb_min)),
        labels=("", f"(-{p},{pq - q})", ""),
    )
    drop0 = (pq - p - q) - tb_min
    bottom = Overlay(
        points=((-drop0, tb_min), (0, pq - p - q), (drop0, tb_min)),
        labels=("", f"(0,{pq - p - q})", ""),
    )
    return [top, right, left, bottom]


_SCALE = 28
_MARGIN = 48


def _coords(mr: MountainRange, extra_points=()) -> tuple:
    pts = list(mr.entries) + [p for ov in extra_points for p in ov.points]
    r_max = max(abs(r) for r, _ in pts)
    t_max = max(t for _, t in pts)
    t_min = min(min(t for _, t in pts), mr.tb_min)

    def xy(r, t):
        x = _MARGIN + (r + r_max) * _SCALE
        y = _MARGIN + (t_max - t) * _SCALE
        return x, y

    width = 2 * _MARGIN + 2 * r_max * _SCALE
    height = 2 * _MARGIN + (t_max - t_min) * _SCALE
    return xy, width, height


def svg_mountain(mr: MountainRange, overlays=None) -> str:
    """SVG 1.1 subset (lines, circles, text); markers carry their lattice data."""
    if not mr.entries:
        raise EmptyRange("mountain range has no entries")
    overlays = list(overlays or [])
    xy, width, height = _coords(mr, overlays)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    for ov in overlays:
        pts = [xy(r, t) for r, t in ov.points]
        if ov.closed:
            pts.append(pts[0])
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            out.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="firebrick" stroke-width="1"/>'
            )
        for (r, t), label in zip(ov.points, ov.labels):
            if not label:
                continue
            x, y = xy(r, t)
            out.append(
                f'<text x="{x + 8}" y="{y - 8}" font-size="10" '
                f'fill="firebrick">{label}</text>'
            )
    for (r, t) in mr.points():
        m = mr.entries[(r, t)]
        x, y = xy(r, t)
        out.append(
            f'<circle cx="{x}" cy="{y}" r="7" fill="white" stroke="black" '
            f'stroke-width="1" data-rot="{r}" data-tb="{t}" data-mult="{m}"/>'
        )
        out.append(
            f'<text x="{x}" y="{y + 3}" font-size="9" text-anchor="middle">{m}</text>'
        )
    if mr.truncated:
        x, y = xy(0, mr.tb_min)
        out.append(
            f'<text x="{x}" y="{y + _SCALE - 6}" font-size="12" '
            f'text-anchor="middle">&#8942;</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def svg_entries(svg_text: str) -> dict[tuple[int, int], int]:
    """Recover the exact entry set from a rendered SVG document."""
    root = ET.fromstring(svg_text)
    ns = "{http://www.w3.org/2000/svg}"
    entries = {}
    for circle in root.iter(f"{ns}circle"):
        r = circle.get("data-rot")
        t = circle.get("data-tb")
        m = circle.get("data-mult")
        if r is not None and t is not None and m is not None:
            entries[(int(r), int(t))] = int(m)
    return entries
