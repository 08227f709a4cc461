"""Deterministic SVG depth diagrams of interval sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .numerics import Interval, IntervalSet, format_decimal


@dataclass(frozen=True)
class Palette:
    background: str = "#ffffff"
    cell: str = "#1f3b73"
    highlight: str = "#d9822b"
    text: str = "#222222"
    axis: str = "#888888"


@dataclass(frozen=True)
class DiagramSpec:
    rows: Sequence[tuple[str, IntervalSet]]
    highlight: Interval | None = None
    width: int = 1000
    row_height: int = 28
    label_precision: int = 4
    coord_precision: int = 3
    x_range: Interval | None = None
    palette: Palette = field(default_factory=Palette)

    def resolved_range(self) -> Interval:
        if self.x_range is not None:
            return self.x_range
        first = self.rows[0][1]
        return Interval(first.intervals[0].lo, first.intervals[-1].hi)


AXIS_HEIGHT = 24
BAND_FILL = Fraction(4, 7)  # share of the row height taken by the rectangles


def render_svg(spec: DiagramSpec) -> str:
    if not spec.rows:
        raise ValueError("diagram has no rows")
    if not spec.rows[0][1]:
        raise ValueError("first row is empty and no x-range can be derived")
    xr = spec.resolved_range()
    if xr.lo >= xr.hi:
        raise ValueError("degenerate x-range")
    span = xr.hi - xr.lo
    width, rh, pal = spec.width, spec.row_height, spec.palette
    height = rh * len(spec.rows) + AXIS_HEIGHT

    def num(x):
        return format_decimal(Fraction(x), spec.coord_precision)

    def sx(x):
        return (x - xr.lo) / span * width

    def rect(lo, hi, y, h, cls, fill):
        return (f'<rect class="{cls}" x="{num(sx(lo))}" y="{num(y)}" '
                f'width="{num(sx(hi) - sx(lo))}" height="{num(h)}" fill="{fill}"/>')

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="{pal.background}"/>',
    ]
    band_h = rh * BAND_FILL
    for k, (label, s) in enumerate(spec.rows):
        top = k * rh
        y = top + rh - band_h - 2
        out.append(f'<g class="band" id="band-{k}">')
        out.append(f'<text x="2" y="{num(top + 10)}" font-family="monospace" '
                   f'font-size="9" fill="{pal.text}">{escape(label)}</text>')
        for iv in s:
            out.append(rect(iv.lo, iv.hi, y, band_h, "cell", pal.cell))
        if spec.highlight is not None:
            h = spec.highlight
            for iv in s:
                lo, hi = max(iv.lo, h.lo), min(iv.hi, h.hi)
                if lo <= hi:
                    out.append(rect(lo, hi, y, band_h, "highlight", pal.highlight))
        out.append('</g>')

    axis_y = rh * len(spec.rows) + 4
    out.append(f'<line x1="0" y1="{axis_y}" x2="{width}" y2="{axis_y}" '
               f'stroke="{pal.axis}" stroke-width="1"/>')
    ticks = [xr.lo, xr.hi]
    if spec.highlight is not None:
        ticks += [spec.highlight.lo, spec.highlight.hi]
    for t in sorted(set(ticks)):
        x = sx(t)
        anchor = "start" if t == xr.lo else "end" if t == xr.hi else "middle"
        out.append(f'<text x="{num(x)}" y="{axis_y + 14}" font-family="monospace" '
                   f'font-size="10" text-anchor="{anchor}" fill="{pal.text}">'
                   f'{format_decimal(t, spec.label_precision)}</text>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
