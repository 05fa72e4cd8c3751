"""Core pipeline: iterate every (trace, frame, event) permutation, clip each
trace to the event interval, project the surviving points into frame-local
coordinates, and shift time to seconds since the event began.

Both interval bounds are inclusive, so a sample landing exactly on a shared
boundary of two back-to-back events appears in both series. Permutations
with no in-interval samples are counted and skipped; no boundary points are
interpolated or invented.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import FrameLocalError, OutOfDomain
from .geodesy import Ellipsoid, HomParams, WGS84, hom_forward, hom_setup
from .model import EventInterval, EventSeries, FrameLine, GeoPoint, LocalPoint, Trace


@dataclass(frozen=True)
class RunResult:
    """All non-empty series plus the count of empty permutations."""

    series: tuple[EventSeries, ...]
    skipped_empty: int


def clip_to_event(trace: Trace, event: EventInterval) -> tuple[GeoPoint, ...]:
    """Points of a time-sorted trace with begin <= time <= end, in order."""
    lo = bisect_left(trace.points, event.begin_utc, key=lambda p: p.time_utc)
    hi = bisect_right(trace.points, event.end_utc, key=lambda p: p.time_utc)
    return trace.points[lo:hi]


def project_series(points: tuple[GeoPoint, ...], frame: FrameLine,
                   event: EventInterval, params: HomParams,
                   trace_id: str) -> EventSeries:
    """Project clipped points into one EventSeries of (x, y, t) samples."""
    locals_: list[LocalPoint] = []
    for point in points:
        try:
            x, y = hom_forward(params, point.lat_deg, point.lon_deg)
        except OutOfDomain as exc:
            raise OutOfDomain(
                f"point ({point.lat_deg}, {point.lon_deg}) at "
                f"{point.time_utc.isoformat()}: {exc}") from None
        t = (point.time_utc - event.begin_utc).total_seconds()
        locals_.append(LocalPoint(x_m=x, y_m=y, t_s=t))
    return EventSeries(trace_id=trace_id, frame_id=frame.id,
                       event_label=event.label, points=tuple(locals_))


def run(traces: list[Trace],
        frames: list[tuple[FrameLine, list[EventInterval]]],
        ellipsoid: Ellipsoid = WGS84,
        jobs: int = 1) -> RunResult:
    """Process every (trace, frame, event) permutation.

    Projection setup happens once per frame. Work may be spread over up to
    ``jobs`` threads; the result is identical regardless: series are sorted
    by (trace id, frame id, event label) and a failure in any permutation
    aborts the run, reported for the first failing permutation in that
    order. Projection errors carry the offending permutation and point.
    """
    prepared = [(frame, events, hom_setup(ellipsoid, frame.origin_lat_deg,
                                          frame.origin_lon_deg, frame.azimuth_deg))
                for frame, events in frames]
    units = [(trace, frame, event, params)
             for trace in traces
             for frame, events, params in prepared
             for event in events]

    def process(unit: tuple[Trace, FrameLine, EventInterval, HomParams],
                ) -> EventSeries | None:
        trace, frame, event, params = unit
        clipped = clip_to_event(trace, event)
        if not clipped:
            return None
        try:
            return project_series(clipped, frame, event, params, trace.id)
        except FrameLocalError as exc:
            raise type(exc)(
                f"trace {trace.id!r}, frame {frame.id!r}, "
                f"event {event.label!r}: {exc}") from exc

    if jobs > 1 and len(units) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(process, units))
    else:
        outcomes = [process(unit) for unit in units]

    series = sorted((s for s in outcomes if s is not None), key=lambda s: s.key)
    return RunResult(series=tuple(series),
                     skipped_empty=sum(1 for s in outcomes if s is None))
