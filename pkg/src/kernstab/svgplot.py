"""Hand-rolled SVG emitters: log-log series plots and log-scale heatmaps.

Both emitters are pure functions of their inputs and format coordinates with
fixed precision, so regenerating a plot from the same report data yields a
byte-identical file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# dark-to-white ramp anchors (position, rgb in [0, 1])
_RAMP_ANCHORS = [
    (0.000, (0.0416, 0.0, 0.0)),
    (0.365, (1.0, 0.0, 0.0)),
    (0.746, (1.0, 1.0, 0.0)),
    (1.000, (1.0, 1.0, 1.0)),
]


def color_ramp(steps: int = 256) -> list[str]:
    """Piecewise-linear ramp through the anchor colors as '#rrggbb' strings."""
    out = []
    for i in range(steps):
        t = i / (steps - 1)
        for (t0, c0), (t1, c1) in zip(_RAMP_ANCHORS[:-1], _RAMP_ANCHORS[1:]):
            if t0 <= t <= t1:
                frac = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
                rgb = [c0[k] + frac * (c1[k] - c0[k]) for k in range(3)]
                break
        out.append("#%02x%02x%02x" % tuple(round(255 * v) for v in rgb))
    return out


@dataclass(frozen=True)
class Series:
    label: str
    points: Sequence[tuple[float, float]]
    color: str = "#1f77b4"
    dashed: bool = False


def _decade_span(values):
    lo, hi = min(values), max(values)
    d0 = math.floor(math.log10(lo) - 1e-12)
    d1 = math.ceil(math.log10(hi) + 1e-12)
    if d0 == d1:
        d1 += 1
    return d0, d1


def loglog_plot_svg(series: Sequence[Series], xlabel: str = "", ylabel: str = "") -> str:
    """Log-log line plot; points with nonpositive ordinate are dropped."""
    width, height = 720, 540
    ml, mr, mt, mb = 80, 24, 24, 64
    plotted = [
        (s, [(x, y) for x, y in s.points if y > 0 and x > 0]) for s in series
    ]
    xs = [x for _, pts in plotted for x, _ in pts]
    ys = [y for _, pts in plotted for _, y in pts]
    if not xs:
        raise ValueError("nothing to plot: no positive points")
    x0, x1 = _decade_span(xs)
    y0, y1 = _decade_span(ys)

    def sx(x):
        return ml + (math.log10(x) - x0) / (x1 - x0) * (width - ml - mr)

    def sy(y):
        return height - mb - (math.log10(y) - y0) / (y1 - y0) * (height - mt - mb)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for dec in range(x0, x1 + 1):
        px = sx(10.0 ** dec)
        parts.append(
            f'<line x1="{px:.2f}" y1="{mt}" x2="{px:.2f}" y2="{height - mb}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{height - mb + 18}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif">1e{dec}</text>'
        )
    for dec in range(y0, y1 + 1):
        py = sy(10.0 ** dec)
        parts.append(
            f'<line x1="{ml}" y1="{py:.2f}" x2="{width - mr}" y2="{py:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{ml - 6}" y="{py + 4:.2f}" font-size="12" '
            f'text-anchor="end" font-family="sans-serif">1e{dec}</text>'
        )
    parts.append(
        f'<rect x="{ml}" y="{mt}" width="{width - ml - mr}" height="{height - mt - mb}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for s, pts in plotted:
        if not pts:
            continue
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{s.color}" '
            f'stroke-width="1.5"{dash}/>'
        )
    if xlabel:
        parts.append(
            f'<text x="{(ml + width - mr) / 2:.2f}" y="{height - 16}" font-size="13" '
            f'text-anchor="middle" font-family="sans-serif">{xlabel}</text>'
        )
    if ylabel:
        parts.append(
            f'<text x="18" y="{(mt + height - mb) / 2:.2f}" font-size="13" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'transform="rotate(-90 18 {(mt + height - mb) / 2:.2f})">{ylabel}</text>'
        )
    ly = height - mb - 14 - 16 * len([s for s, p in plotted if p])
    for s, pts in plotted:
        if not pts:
            continue
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        parts.append(
            f'<line x1="{ml + 10}" y1="{ly:.2f}" x2="{ml + 40}" y2="{ly:.2f}" '
            f'stroke="{s.color}" stroke-width="1.5"{dash}/>'
        )
        parts.append(
            f'<text x="{ml + 46}" y="{ly + 4:.2f}" font-size="12" '
            f'font-family="sans-serif">{s.label}</text>'
        )
        ly += 16
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def heatmap_svg(values, floor_log10: float = -5.0, ceil_log10: float = 0.0) -> str:
    """Heatmap of |values| on a log color scale clipped to the given decade range."""
    grid = np.abs(np.asarray(values, dtype=float))
    n_rows, n_cols = grid.shape
    ramp = color_ramp()
    cell = max(4, 480 // max(n_rows, n_cols))
    margin = 20
    width = n_cols * cell + 2 * margin
    height = n_rows * cell + 2 * margin
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    span = ceil_log10 - floor_log10
    tiny = 10.0 ** (floor_log10 - 1)
    for i in range(n_rows):
        for j in range(n_cols):
            level = math.log10(max(grid[i, j], tiny))
            t = min(max((level - floor_log10) / span, 0.0), 1.0)
            color = ramp[round(t * (len(ramp) - 1))]
            parts.append(
                f'<rect x="{margin + j * cell}" y="{margin + i * cell}" '
                f'width="{cell}" height="{cell}" fill="{color}"/>'
            )
    parts.append(
        f'<rect x="{margin}" y="{margin}" width="{n_cols * cell}" height="{n_rows * cell}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
