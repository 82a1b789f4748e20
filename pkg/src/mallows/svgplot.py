"""Minimal static SVG plots (polylines and scatters) with labeled axes.

Hand-rolled instead of a plotting library so that output bytes are a pure
function of the data: re-running an experiment with the same seed rewrites
the same file.
"""

from __future__ import annotations

from typing import Sequence

_WIDTH, _HEIGHT = 640, 440
_ML, _MR, _MT, _MB = 70, 160, 30, 55
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _fmt(x: float) -> str:
    return f"{x:.4g}"


class _Canvas:
    def __init__(self, xlo, xhi, ylo, yhi, xlabel, ylabel, title):
        if xhi <= xlo:
            xhi = xlo + 1.0
        if yhi <= ylo:
            yhi = ylo + 1.0
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
            f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
            f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
            f'<text x="{_ML}" y="18" font-size="14">{title}</text>',
        ]
        x0, x1 = _ML, _WIDTH - _MR
        y0, y1 = _HEIGHT - _MB, _MT
        self.parts.append(
            f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>'
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>'
        )
        for t in _ticks(xlo, xhi):
            px = self.px(t)
            self.parts.append(
                f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 4}" stroke="black"/>'
                f'<text x="{px:.2f}" y="{y0 + 18}" text-anchor="middle">{_fmt(t)}</text>'
            )
        for t in _ticks(ylo, yhi):
            py = self.py(t)
            self.parts.append(
                f'<line x1="{x0 - 4}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>'
                f'<text x="{x0 - 8}" y="{py + 4:.2f}" text-anchor="end">{_fmt(t)}</text>'
            )
        self.parts.append(
            f'<text x="{(x0 + x1) / 2:.2f}" y="{_HEIGHT - 12}" text-anchor="middle">{xlabel}</text>'
            f'<text x="16" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {(y0 + y1) / 2:.2f})">{ylabel}</text>'
        )

    def px(self, x: float) -> float:
        return _ML + (x - self.xlo) / (self.xhi - self.xlo) * (_WIDTH - _ML - _MR)

    def py(self, y: float) -> float:
        return _HEIGHT - _MB - (y - self.ylo) / (self.yhi - self.ylo) * (_HEIGHT - _MT - _MB)

    def legend(self, idx: int, label: str, color: str, dashed: bool) -> None:
        x = _WIDTH - _MR + 12
        y = _MT + 16 * (idx + 1)
        dash = ' stroke-dasharray="6 3"' if dashed else ""
        self.parts.append(
            f'<line x1="{x}" y1="{y - 4}" x2="{x + 22}" y2="{y - 4}" '
            f'stroke="{color}" stroke-width="2"{dash}/>'
            f'<text x="{x + 27}" y="{y}">{label}</text>'
        )

    def finish(self) -> str:
        return "".join(self.parts) + "</svg>"


def line_plot(
    path,
    curves: Sequence[tuple[str, Sequence[float], Sequence[float], bool]],
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> None:
    """Write one polyline per (label, xs, ys, dashed) curve."""
    xs_all = [x for _, xs, _, _ in curves for x in xs]
    ys_all = [y for _, _, ys, _ in curves for y in ys]
    c = _Canvas(min(xs_all), max(xs_all), min(0.0, min(ys_all)), max(1.0, max(ys_all)),
                xlabel, ylabel, title)
    for idx, (label, xs, ys, dashed) in enumerate(curves):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(f"{c.px(x):.2f},{c.py(y):.2f}" for x, y in zip(xs, ys))
        dash = ' stroke-dasharray="6 3"' if dashed else ""
        c.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"{dash}/>'
        )
        c.legend(idx, label, color, dashed)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(c.finish())


def scatter_plot(
    path,
    groups: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> None:
    """Write one dot cloud per (label, xs, ys) group."""
    xs_all = [x for _, xs, _ in groups for x in xs]
    ys_all = [y for _, _, ys in groups for y in ys]
    c = _Canvas(min(xs_all), max(xs_all), min(0.0, min(ys_all)), max(1.0, max(ys_all)),
                xlabel, ylabel, title)
    for idx, (label, xs, ys) in enumerate(groups):
        color = _COLORS[idx % len(_COLORS)]
        for x, y in zip(xs, ys):
            c.parts.append(f'<circle cx="{c.px(x):.2f}" cy="{c.py(y):.2f}" r="3" fill="{color}"/>')
        c.legend(idx, label, color, False)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(c.finish())
