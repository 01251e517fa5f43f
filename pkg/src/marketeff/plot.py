"""Minimal SVG line charts for price paths and amplitude series."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from .core import PricePath

WIDTH, HEIGHT = 640, 360
MARGIN = 48
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def emit_line_svg(series: Mapping[str, Sequence], title: str = "", x_label: str = "t",
                  y_label: str = "value") -> str:
    """One polyline per named series; x is the index, y the (exact) value."""
    ys = [Fraction(v) for vals in series.values() for v in vals]
    n_max = max((len(v) for v in series.values()), default=0)
    lo = min(ys, default=Fraction(0))
    hi = max(ys, default=Fraction(1))
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN

    def sx(i):
        return MARGIN + (plot_w * i / max(n_max - 1, 1))

    def sy(v):
        return MARGIN + plot_h * float((hi - Fraction(v)) / (hi - lo))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="{MARGIN // 2}" text-anchor="middle" font-size="14">{escape(title)}</text>',
        # axes
        f'<line class="axis" x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line class="axis" x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 10}" text-anchor="middle" font-size="12">{escape(x_label)}</text>',
        f'<text x="14" y="{HEIGHT // 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {HEIGHT // 2})">{escape(y_label)}</text>',
        f'<text x="{MARGIN - 4}" y="{_fmt(sy(hi))}" text-anchor="end" font-size="10">{hi}</text>',
        f'<text x="{MARGIN - 4}" y="{_fmt(sy(lo))}" text-anchor="end" font-size="10">{lo}</text>',
    ]
    if lo < 0 < hi:
        out.append(f'<line class="zero" x1="{MARGIN}" y1="{_fmt(sy(0))}" x2="{WIDTH - MARGIN}" '
                   f'y2="{_fmt(sy(0))}" stroke="#bbbbbb" stroke-dasharray="4 3"/>')
    for k, (name, vals) in enumerate(series.items()):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{_fmt(sx(i))},{_fmt(sy(v))}" for i, v in enumerate(vals))
        out.append(f'<polyline data-series="{escape(name)}" fill="none" stroke="{color}" '
                   f'stroke-width="2" points="{pts}"/>')
        out.append(f'<text x="{WIDTH - MARGIN + 4}" y="{MARGIN + 14 * k}" font-size="11" '
                   f'fill="{color}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_price_svg(paths: Mapping[str, PricePath], title: str = "market") -> str:
    return emit_line_svg({name: path.prices for name, path in paths.items()},
                         title=title, x_label="time", y_label="price")
