"""Minimal deterministic SVG line charts, no plotting dependency.

Output is standalone SVG 1.1 text. Rendering the same data twice produces
byte-identical markup; all coordinates are formatted with fixed precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = ["Series", "render_chart"]

_WIDTH = 760
_HEIGHT = 480
_MARGIN_LEFT = 78
_MARGIN_RIGHT = 190
_MARGIN_TOP = 46
_MARGIN_BOTTOM = 58

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#e377c2",
)
_DASHES = ("", "6,3", "2,3", "8,3,2,3")


@dataclass(frozen=True)
class Series:
    label: str
    x: Sequence[float]
    y: Sequence[float]


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    """Round tick positions covering [lo, hi]."""
    if not hi > lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    else:
        step = 10.0 * mag
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def render_chart(
    series: Sequence[Series],
    title: str,
    x_label: str,
    y_label: str,
    log_y: bool = False,
) -> str:
    """Render line series to SVG text; log_y drops non-positive values."""
    pts_per_series: list[list[tuple[float, float]]] = []
    for s in series:
        pts = [
            (float(x), float(y))
            for x, y in zip(s.x, s.y)
            if math.isfinite(x) and math.isfinite(y) and (not log_y or y > 0.0)
        ]
        pts_per_series.append(pts)

    all_pts = [p for pts in pts_per_series for p in pts]
    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    out.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>')
    out.append(
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{_esc(title)}</text>'
    )
    if not all_pts:
        out.append(
            f'<text x="{_WIDTH // 2}" y="{_HEIGHT // 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">no positive data</text>'
        )
        out.append("</svg>")
        return "\n".join(out) + "\n"

    x_lo = min(p[0] for p in all_pts)
    x_hi = max(p[0] for p in all_pts)
    if not x_hi > x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if log_y:
        y_max = max(p[1] for p in all_pts)
        y_min = min(p[1] for p in all_pts)
        hi_dec = math.ceil(math.log10(y_max))
        lo_dec = math.floor(math.log10(y_min))
        lo_dec = max(lo_dec, hi_dec - 12)  # clip runaway tails near extinction
        y_lo, y_hi = float(lo_dec), float(hi_dec)
        if not y_hi > y_lo:
            y_hi = y_lo + 1.0
    else:
        y_min = min(p[1] for p in all_pts)
        y_max = max(p[1] for p in all_pts)
        y_lo = min(0.0, y_min) if y_min >= 0 else y_min
        y_hi = y_max
        if not y_hi > y_lo:
            y_hi = y_lo + 1.0
        pad = 0.05 * (y_hi - y_lo)
        y_hi += pad

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        v = math.log10(y) if log_y else y
        v = min(max(v, y_lo), y_hi)
        return _MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    # axes box
    out.append(
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#000000" stroke-width="1"/>'
    )

    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        out.append(
            f'<line x1="{_fmt(x)}" y1="{_MARGIN_TOP + plot_h}" x2="{_fmt(x)}" '
            f'y2="{_MARGIN_TOP + plot_h + 5}" stroke="#000000" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(x)}" y="{_MARGIN_TOP + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t:g}</text>'
        )

    if log_y:
        dec = int(y_lo)
        while dec <= int(y_hi):
            y = py(10.0 ** dec)
            out.append(
                f'<line x1="{_MARGIN_LEFT}" y1="{_fmt(y)}" '
                f'x2="{_MARGIN_LEFT + plot_w}" y2="{_fmt(y)}" '
                f'stroke="#dddddd" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">1e{dec}</text>'
            )
            dec += 1
    else:
        for t in _nice_ticks(y_lo, y_hi):
            y = py(t)
            out.append(
                f'<line x1="{_MARGIN_LEFT}" y1="{_fmt(y)}" '
                f'x2="{_MARGIN_LEFT + plot_w}" y2="{_fmt(y)}" '
                f'stroke="#dddddd" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">{t:g}</text>'
            )

    out.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" y="{_HEIGHT - 14}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13">'
        f"{_esc(x_label)}</text>"
    )
    out.append(
        f'<text x="20" y="{_MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {_MARGIN_TOP + plot_h / 2:.1f})">'
        f"{_esc(y_label)}</text>"
    )

    for i, (s, pts) in enumerate(zip(series, pts_per_series)):
        color = _PALETTE[i % len(_PALETTE)]
        dash = _DASHES[(i // len(_PALETTE)) % len(_DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        if pts:
            coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"{dash_attr}/>'
            )
        ly = _MARGIN_TOP + 14 + 18 * i
        lx = _MARGIN_LEFT + plot_w + 12
        out.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5"{dash_attr}/>'
        )
        out.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{_esc(s.label)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
