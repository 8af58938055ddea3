"""Self-contained SVG charts for sweep series, no plotting dependency.

Two kinds: stacked bars of per-level data movement (one bar per sweep
value) and a line of total iterations against the swept parameter. Output
is deterministic: fixed palette, fixed coordinate formatting, no ids or
timestamps.
"""

from __future__ import annotations

from .analysis import SweepSeries
from .serialize import atomic_write, fmt_number

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
)

WIDTH = 960
HEIGHT = 560
MARGIN_LEFT = 110
MARGIN_RIGHT = 210
MARGIN_TOP = 60
MARGIN_BOTTOM = 80

PLOT_KINDS = ("stacked_bar", "line")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" '
        f'font-family="sans-serif">{_escape(title)}</text>',
    ]


def _axes(x_label: str, y_label: str) -> list[str]:
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    mid_y = (top + bottom) / 2
    return [
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="#000" stroke-width="1.5"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="#000" stroke-width="1.5"/>',
        f'<text x="{(left + right) / 2:.1f}" y="{HEIGHT - 24}" text-anchor="middle" '
        f'font-size="14" font-family="sans-serif">{_escape(x_label)}</text>',
        f'<text x="30" y="{mid_y:.1f}" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif" transform="rotate(-90 30 {mid_y:.1f})">{_escape(y_label)}</text>',
    ]


def _y_ticks(y_max: float, to_px) -> list[str]:
    parts = []
    for i in range(6):
        value = y_max * i / 5
        y = to_px(value)
        parts.append(
            f'<line x1="{MARGIN_LEFT}" y1="{y:.2f}" x2="{WIDTH - MARGIN_RIGHT}" '
            f'y2="{y:.2f}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif">{fmt_number(round(value, 2))}</text>'
        )
    return parts


def _legend(labels: tuple[str, ...]) -> list[str]:
    parts = []
    x = WIDTH - MARGIN_RIGHT + 24
    for idx, label in enumerate(labels):
        y = MARGIN_TOP + 18 + idx * 22
        color = PALETTE[idx % len(PALETTE)]
        parts.append(f'<rect x="{x}" y="{y - 10}" width="14" height="14" fill="{color}"/>')
        parts.append(
            f'<text x="{x + 20}" y="{y + 2}" font-size="13" '
            f'font-family="sans-serif">{_escape(label)}</text>'
        )
    return parts


def _stacked_bar_svg(series: SweepSeries) -> str:
    labels = tuple(lv.label for lv in series.points[0].breakdown.levels)
    y_max = max(p.breakdown.total_dm_bits for p in series.points) or 1
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def y_px(value: float) -> float:
        return bottom - (value / y_max) * (bottom - top)

    n = len(series.points)
    slot = (right - left) / n
    bar_width = slot * 0.6

    parts = _header(f"{series.accelerator}: data movement vs {series.spec.parameter}")
    parts += _y_ticks(float(y_max), y_px)
    parts += _axes(series.spec.parameter, "data movement (bits)")

    for i, point in enumerate(series.points):
        x = left + slot * i + (slot - bar_width) / 2
        parts.append(f'<g class="bar-group" data-value="{fmt_number(point.value)}">')
        running = 0
        for j, lv in enumerate(point.breakdown.levels):
            y_top = y_px(running + lv.data_movement_bits)
            y_bot = y_px(running)
            parts.append(
                f'<rect class="segment" x="{x:.2f}" y="{y_top:.2f}" '
                f'width="{bar_width:.2f}" height="{y_bot - y_top:.2f}" '
                f'fill="{PALETTE[j % len(PALETTE)]}"/>'
            )
            running += lv.data_movement_bits
        parts.append("</g>")
        parts.append(
            f'<text x="{x + bar_width / 2:.2f}" y="{bottom + 18}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{fmt_number(point.value)}</text>'
        )

    parts += _legend(labels)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _line_svg(series: SweepSeries) -> str:
    y_max = max(p.breakdown.total_iterations for p in series.points) or 1
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def y_px(value: float) -> float:
        return bottom - (value / y_max) * (bottom - top)

    n = len(series.points)

    def x_px(index: int) -> float:
        if n == 1:
            return (left + right) / 2
        return left + index * (right - left) / (n - 1)

    parts = _header(f"{series.accelerator}: total iterations vs {series.spec.parameter}")
    parts += _y_ticks(float(y_max), y_px)
    parts += _axes(series.spec.parameter, "total iterations")

    coords = [
        (x_px(i), y_px(p.breakdown.total_iterations))
        for i, p in enumerate(series.points)
    ]
    if len(coords) > 1:
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in coords)
        parts.append(
            f'<polyline fill="none" stroke="{PALETTE[0]}" stroke-width="2.5" points="{path}"/>'
        )
    for (x, y), point in zip(coords, series.points):
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{PALETTE[0]}"/>')
        parts.append(
            f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle" font-size="12" '
            f'font-family="sans-serif">{fmt_number(point.value)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_plot(series: SweepSeries, kind: str) -> str:
    if not series.points:
        raise ValueError("cannot plot an empty sweep series")
    if kind == "stacked_bar":
        return _stacked_bar_svg(series)
    if kind == "line":
        return _line_svg(series)
    raise ValueError(f"unknown plot kind {kind!r} (expected stacked_bar or line)")


def emit_plot(series: SweepSeries, kind: str, path: str) -> None:
    """Render the series and write the SVG file atomically."""
    atomic_write(path, render_plot(series, kind))
