"""Serialize event series to per-permutation CSV files and render an
optional SVG overlay of all series in the shared local coordinate system.

CSV contract: UTF-8, LF line endings, header exactly ``x,y,t``, one row per
sample with x/y in meters and t in seconds. Numbers use the shortest
decimal rendering that parses back to the identical double, so a written
file re-reads bit-exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import NoSeries
from .model import EventSeries

_UNSAFE = re.compile(r"[^A-Za-z0-9_-]")

# stroke colors cycled per frame id
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _sanitize(part: str) -> str:
    cleaned = _UNSAFE.sub("_", part)
    return cleaned if cleaned else "_"


def _format_number(value: float) -> str:
    # repr() is the shortest round-tripping form; integral values drop ".0"
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


@dataclass
class OutputLayout:
    """Names output files ``<trace>__<frame>__<event>.csv`` under out_dir.

    Name components are sanitized to [A-Za-z0-9_-]; names colliding after
    sanitization get numeric suffixes, tracked per layout instance.
    """

    out_dir: Path
    _used: dict[str, int] = field(default_factory=dict, init=False, repr=False)

    def path_for(self, series: EventSeries) -> Path:
        stem = "__".join(_sanitize(part) for part in series.key)
        count = self._used.get(stem, 0) + 1
        self._used[stem] = count
        name = f"{stem}.csv" if count == 1 else f"{stem}_{count}.csv"
        return Path(self.out_dir) / name


def write_csv(series: EventSeries, layout: OutputLayout) -> Path:
    """Write one series to its CSV file; returns the path written."""
    path = layout.path_for(series)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("x,y,t\n")
        for point in series.points:
            handle.write(f"{_format_number(point.x_m)},"
                         f"{_format_number(point.y_m)},"
                         f"{_format_number(point.t_s)}\n")
    return path


def render_overlay_svg(series: list[EventSeries] | tuple[EventSeries, ...],
                       path: str | Path) -> Path:
    """Render all series as polylines in one SVG.

    The drawing shares one local coordinate system with equal x/y scale and
    the along-frame direction pointing up. The viewBox fits the union
    bounding box with a 5% margin (at least 1 m of span), strokes are
    colored by frame id from a fixed palette, and a legend lists each
    (trace, frame, event).
    """
    if not series:
        raise NoSeries("no series to plot")
    path = Path(path)

    xs = [p.x_m for s in series for p in s.points]
    ys = [-p.y_m for s in series for p in s.points]  # SVG y grows downward
    def _ensure_span(lo: float, hi: float) -> tuple[float, float]:
        if hi - lo < 1.0:
            center = 0.5 * (lo + hi)
            return center - 0.5, center + 0.5
        return lo, hi

    min_x, max_x = _ensure_span(min(xs), max(xs))
    min_y, max_y = _ensure_span(min(ys), max(ys))
    pad = 0.05 * max(max_x - min_x, max_y - min_y)
    min_x, max_x = min_x - pad, max_x + pad
    min_y, max_y = min_y - pad, max_y + pad
    width = max_x - min_x
    height = max_y - min_y
    span = max(width, height)

    frame_ids: list[str] = []
    for s in series:
        if s.frame_id not in frame_ids:
            frame_ids.append(s.frame_id)
    color_of = {fid: _PALETTE[i % len(_PALETTE)] for i, fid in enumerate(frame_ids)}

    stroke = span * 0.004
    font = span * 0.03
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="800" height="{800.0 * height / width:.0f}" '
        f'viewBox="{min_x:.6g} {min_y:.6g} {width:.6g} {height:.6g}">',
    ]
    for s in series:
        pts = " ".join(f"{p.x_m:.6g},{-p.y_m:.6g}" for p in s.points)
        lines.append(f'  <polyline points="{pts}" fill="none" '
                     f'stroke="{color_of[s.frame_id]}" stroke-width="{stroke:.6g}" '
                     f'stroke-linejoin="round" stroke-linecap="round"/>')
    for i, s in enumerate(series):
        label = escape(f"{s.trace_id} / {s.frame_id} / {s.event_label}")
        lines.append(f'  <text x="{min_x + 0.4 * font:.6g}" '
                     f'y="{min_y + (i + 1.2) * font:.6g}" font-size="{font:.6g}" '
                     f'font-family="sans-serif" fill="{color_of[s.frame_id]}">'
                     f'{label}</text>')
    lines.append('</svg>')

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")
    return path
