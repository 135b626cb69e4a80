"""Minimal SVG chart emission.

Deliberately hand-rolled: output contains no timestamps or environment
metadata, so rerunning a command with the same inputs rewrites byte-identical
files.  Only the handful of chart types the CLI needs are provided.
"""

from __future__ import annotations

import numpy as np

WIDTH = 840
HEIGHT = 520
MARGIN_L = 70
MARGIN_R = 160
MARGIN_T = 40
MARGIN_B = 55

PALETTE = ("#4363d8", "#3cb44b", "#e6194b", "#f58231", "#911eb4", "#469990")


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, width: int = WIDTH, height: int = HEIGHT):
        self.width = width
        self.height = height
        self.parts: list[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
        ]

    def line(self, x1, y1, x2, y2, color="#444", width=1.0):
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{color}" stroke-width="{width}"/>'
        )

    def polyline(self, pts, color, width=1.5, dashed=False):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"{dash}/>'
        )

    def polygon(self, pts, fill, opacity=0.25):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        self.parts.append(
            f'<polygon points="{coords}" fill="{fill}" opacity="{opacity}" '
            'stroke="none"/>'
        )

    def rect(self, x, y, w, h, fill, opacity=1.0):
        self.parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
            f'height="{_fmt(h)}" fill="{fill}" opacity="{opacity}"/>'
        )

    def circle(self, x, y, r, fill, opacity=1.0):
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" '
            f'fill="{fill}" opacity="{opacity}"/>'
        )

    def text(self, x, y, s, size=13, anchor="middle", color="#222"):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}" fill="{color}">{s}</text>'
        )

    def to_string(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


class _Axes:
    """Maps data coordinates into the plot rectangle and draws the frame."""

    def __init__(self, canvas, x_range, y_range, title, xlabel, ylabel):
        self.canvas = canvas
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0
        self.px0 = MARGIN_L
        self.px1 = canvas.width - MARGIN_R
        self.py0 = canvas.height - MARGIN_B
        self.py1 = MARGIN_T
        self._frame(title, xlabel, ylabel)

    def x(self, v) -> float:
        return self.px0 + (v - self.x0) / (self.x1 - self.x0) * (self.px1 - self.px0)

    def y(self, v) -> float:
        return self.py0 + (v - self.y0) / (self.y1 - self.y0) * (self.py1 - self.py0)

    def _frame(self, title, xlabel, ylabel):
        c = self.canvas
        c.line(self.px0, self.py0, self.px1, self.py0)
        c.line(self.px0, self.py0, self.px0, self.py1)
        for tick in np.linspace(self.x0, self.x1, 6):
            px = self.x(tick)
            c.line(px, self.py0, px, self.py0 + 5)
            c.text(px, self.py0 + 20, f"{tick:.4g}", size=11)
        for tick in np.linspace(self.y0, self.y1, 6):
            py = self.y(tick)
            c.line(self.px0 - 5, py, self.px0, py)
            c.text(self.px0 - 9, py + 4, f"{tick:.4g}", size=11, anchor="end")
        c.text((self.px0 + self.px1) / 2, c.height - 15, xlabel)
        c.text(15, (self.py0 + self.py1) / 2, ylabel, anchor="middle")
        c.text((self.px0 + self.px1) / 2, 22, title, size=15)

    def legend(self, entries):
        x = self.px1 + 14
        y = MARGIN_T + 10
        for name, color in entries:
            self.canvas.rect(x, y - 9, 18, 4, color)
            self.canvas.text(x + 24, y, name, size=12, anchor="start")
            y += 20

    def clip(self, pts):
        return [
            (self.x(px), self.y(py))
            for px, py in pts
            if self.x0 <= px <= self.x1 and self.y0 <= py <= self.y1
        ]


def line_chart(series, bands, title, xlabel, ylabel) -> str:
    """Line chart with optional shaded bands.

    ``series``: list of (name, xs, ys); ``bands``: list of (xs, lo, hi)
    aligned with the series palette.
    """
    xs_all = np.concatenate([np.asarray(s[1], float) for s in series])
    ys_all = [np.asarray(s[2], float) for s in series]
    for _, lo, hi in bands:
        ys_all.extend([np.asarray(lo, float), np.asarray(hi, float)])
    ys_cat = np.concatenate(ys_all)
    canvas = _Canvas()
    axes = _Axes(
        canvas,
        (float(xs_all.min()), float(xs_all.max())),
        (float(ys_cat.min()), float(ys_cat.max())),
        title,
        xlabel,
        ylabel,
    )
    for i, (xs, lo, hi) in enumerate(bands):
        top = [(axes.x(a), axes.y(b)) for a, b in zip(xs, hi)]
        bottom = [(axes.x(a), axes.y(b)) for a, b in zip(xs[::-1], lo[::-1])]
        canvas.polygon(top + bottom, PALETTE[i % len(PALETTE)])
    for i, (name, xs, ys) in enumerate(series):
        pts = [(axes.x(a), axes.y(b)) for a, b in zip(xs, ys)]
        canvas.polyline(pts, PALETTE[i % len(PALETTE)])
    axes.legend([(s[0], PALETTE[i % len(PALETTE)]) for i, s in enumerate(series)])
    return canvas.to_string()


def histogram_chart(groups, title, xlabel, ylabel) -> str:
    """Side-by-side bar groups: list of (name, positions, counts)."""
    canvas = _Canvas()
    max_count = max(max(c) if len(c) else 1 for _, _, c in groups)
    axes = _Axes(canvas, (0.0, 1.0), (0.0, float(max_count) * 1.05), title, xlabel, ylabel)
    n = len(groups)
    width = 8.0 / n
    for i, (name, positions, counts) in enumerate(groups):
        color = PALETTE[i % len(PALETTE)]
        for pos, count in zip(positions, counts):
            if count == 0:
                continue
            px = axes.x(pos) + (i - (n - 1) / 2) * width
            py = axes.y(count)
            canvas.rect(px - width / 2, py, width, axes.py0 - py, color, opacity=0.8)
    axes.legend([(g[0], PALETTE[i % len(PALETTE)]) for i, g in enumerate(groups)])
    return canvas.to_string()


def contour_chart(point_groups, contour_groups, title, xlabel, ylabel, rect) -> str:
    """Scatter of sample points plus iso-contour polylines.

    ``point_groups``: list of (name, (n, 2) array); ``contour_groups``: list
    of (name, [polyline, ...]) drawn in the secondary palette slots.
    """
    x_min, x_max, y_min, y_max = rect
    canvas = _Canvas()
    axes = _Axes(canvas, (x_min, x_max), (y_min, y_max), title, xlabel, ylabel)
    legend = []
    for i, (name, pts) in enumerate(point_groups):
        color = "#aaaaaa" if i == 0 else "#666666"
        for x, y in pts:
            if x_min <= x <= x_max and y_min <= y <= y_max:
                canvas.circle(axes.x(x), axes.y(y), 1.4, color, opacity=0.5)
        legend.append((name, color))
    for i, (name, polylines) in enumerate(contour_groups):
        color = PALETTE[i % len(PALETTE)]
        for poly in polylines:
            pts = [(axes.x(x), axes.y(y)) for x, y in poly]
            if len(pts) >= 2:
                canvas.polyline(pts, color, width=1.3)
        legend.append((name, color))
    axes.legend(legend)
    return canvas.to_string()
