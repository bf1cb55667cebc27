"""Minimal self-contained SVG line charts.

One polyline per series, inline axes and tick labels, an optional horizontal
reference line, no external assets.  Rendering is a pure function of the data,
so identical inputs produce identical bytes.
"""

from __future__ import annotations

__all__ = ["line_chart"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_W, _H = 800, 480
_ML, _MR, _MT, _MB = 70, 20, 40, 50


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _num(x: float) -> str:
    return format(x, ".6g")


def line_chart(series, title: str = "", xlabel: str = "", ylabel: str = "",
               refline: float | None = None,
               reflabel: str = "") -> str:
    """Render series = [(label, xs, ys), ...] as an SVG 1.1 document."""
    if not series:
        raise ValueError("need at least one series")
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if refline is not None:
        ys_all = ys_all + [refline]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def px(x: float) -> float:
        return _ML + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MT + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{title}</text>'
        )

    axis_style = 'stroke="black" stroke-width="1"'
    parts.append(f'<line x1="{_ML}" y1="{_MT + plot_h}" x2="{_ML + plot_w}" '
                 f'y2="{_MT + plot_h}" {axis_style}/>')
    parts.append(f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" '
                 f'y2="{_MT + plot_h}" {axis_style}/>')

    for tx in _ticks(x_lo, x_hi):
        x = px(tx)
        parts.append(f'<line x1="{x:.1f}" y1="{_MT + plot_h}" x2="{x:.1f}" '
                     f'y2="{_MT + plot_h + 5}" {axis_style}/>')
        parts.append(f'<text x="{x:.1f}" y="{_MT + plot_h + 20}" '
                     f'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{_num(tx)}</text>')
    for ty in _ticks(y_lo, y_hi):
        y = py(ty)
        parts.append(f'<line x1="{_ML - 5}" y1="{y:.1f}" x2="{_ML}" '
                     f'y2="{y:.1f}" {axis_style}/>')
        parts.append(f'<text x="{_ML - 8}" y="{y + 4:.1f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{_num(ty)}</text>')
    if xlabel:
        parts.append(f'<text x="{_ML + plot_w / 2:.1f}" y="{_H - 12}" '
                     f'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="13">{xlabel}</text>')
    if ylabel:
        cy = _MT + plot_h / 2
        parts.append(f'<text x="16" y="{cy:.1f}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="13" '
                     f'transform="rotate(-90 16 {cy:.1f})">{ylabel}</text>')

    if refline is not None:
        y = py(refline)
        parts.append(f'<line x1="{_ML}" y1="{y:.1f}" x2="{_ML + plot_w}" '
                     f'y2="{y:.1f}" stroke="gray" stroke-width="1" '
                     f'stroke-dasharray="6,4"/>')
        if reflabel:
            parts.append(f'<text x="{_ML + plot_w - 4}" y="{y - 5:.1f}" '
                         f'text-anchor="end" font-family="sans-serif" '
                         f'font-size="11" fill="gray">{reflabel}</text>')

    for idx, (label, xs, ys) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5" points="{points}"/>')
        ly = _MT + 16 * (idx + 1)
        lx = _ML + plot_w - 150
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" '
                     f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
                     f'font-size="11">{label}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
