"""Parse GPX traces, GeoJSON frame files, and ISO 8601 intervals.

Format contracts
----------------
Frames are a GeoJSON FeatureCollection (RFC 7946). Each frame feature must
have a LineString geometry with exactly two positions; positions are
[lon, lat] per the RFC, which is the reverse of the (lat, lon) order used
by this package's APIs. Event intervals come from an ``events`` property
holding an array of interval strings, and/or from any other property whose
string value parses as an interval (the property name becomes the label).

Intervals are the two-datetime ISO 8601 form ``<start>/<end>``; duration
forms such as ``PT20M`` are rejected. Datetimes without a UTC offset are
interpreted as UTC, with a warning.

Traces are GPX 1.0/1.1; only trk/trkseg/trkpt with lat/lon attributes and
a <time> child are consumed. GPX times are UTC by that format's definition.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from . import geodesy
from .errors import (
    BadLineString,
    CoincidentPoints,
    FramesFileUnreadable,
    MalformedInterval,
    MalformedXml,
    NearAntipodal,
    NoEvents,
    NotFeatureCollection,
    NoTimedPoints,
    NoTraces,
    ReversedInterval,
)
from .model import EventInterval, FrameLine, GeoPoint, Trace

WarnFn = Callable[[str], None]


@dataclass
class IngestReport:
    """Load statistics plus non-fatal (source, message) warnings."""

    traces_loaded: int = 0
    frames_loaded: int = 0
    events_loaded: int = 0
    warnings: list[tuple[str, str]] = field(default_factory=list)


def _parse_instant(text: str) -> tuple[datetime, bool]:
    """Parse one ISO 8601 datetime; returns (instant in UTC, was_naive)."""
    cleaned = text.strip()
    if cleaned.endswith(("Z", "z")):
        cleaned = cleaned[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(cleaned)
    except ValueError as exc:
        raise MalformedInterval(f"bad datetime {text!r}: {exc}") from None
    if parsed.tzinfo is None:
        return parsed.replace(tzinfo=timezone.utc), True
    return parsed.astimezone(timezone.utc), False


def parse_interval(text: str, label: str = "e0",
                   on_warning: WarnFn | None = None) -> EventInterval:
    """Parse a ``<start>/<end>`` interval string into an EventInterval.

    Only the explicit two-datetime form is accepted; begin and end are
    normalized to UTC. Datetimes lacking an offset are taken as UTC and
    reported through on_warning when given.
    """
    parts = text.split("/")
    if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
        raise MalformedInterval(
            f"{text!r} is not a <start>/<end> interval with two datetimes")
    for part in parts:
        if part.strip().lstrip("+-").upper().startswith("P"):
            raise MalformedInterval(
                f"duration component {part.strip()!r} not supported; "
                "give two explicit datetimes")
    begin, begin_naive = _parse_instant(parts[0])
    end, end_naive = _parse_instant(parts[1])
    if (begin_naive or end_naive) and on_warning is not None:
        on_warning(f"interval {text!r} has no UTC offset; assuming UTC")
    return EventInterval(begin_utc=begin, end_utc=end, label=label)


def format_interval(interval: EventInterval) -> str:
    """Render an interval in the canonical UTC ``Z`` form that parses back
    to an equal value."""
    def _one(instant: datetime) -> str:
        return instant.isoformat().replace("+00:00", "Z")
    return f"{_one(interval.begin_utc)}/{_one(interval.end_utc)}"


def build_frame_line(frame_id: str, origin_lat_deg: float, origin_lon_deg: float,
                     target_lat_deg: float, target_lon_deg: float,
                     ellipsoid: geodesy.Ellipsoid = geodesy.WGS84) -> FrameLine:
    """Derive azimuth and length for a two-point frame line."""
    solution = geodesy.geodesic_inverse(ellipsoid, origin_lat_deg, origin_lon_deg,
                                        target_lat_deg, target_lon_deg)
    return FrameLine(
        id=frame_id,
        origin_lat_deg=origin_lat_deg,
        origin_lon_deg=origin_lon_deg,
        target_lat_deg=target_lat_deg,
        target_lon_deg=target_lon_deg,
        azimuth_deg=solution.forward_azimuth_deg,
        length_m=solution.distance_m,
    )


def _feature_id(feature: dict, index: int) -> str:
    if "id" in feature and feature["id"] is not None and str(feature["id"]) != "":
        return str(feature["id"])
    name = (feature.get("properties") or {}).get("name")
    if isinstance(name, str) and name:
        return name
    return f"f{index}"


def _feature_events(feature_id: str, properties: dict,
                    warn: WarnFn) -> list[EventInterval]:
    events: list[EventInterval] = []
    raw = properties.get("events")
    if isinstance(raw, list):
        for i, item in enumerate(raw):
            if not isinstance(item, str):
                raise MalformedInterval(
                    f"frame {feature_id!r}: events[{i}] is not a string")
            try:
                events.append(parse_interval(item, label=f"e{i}", on_warning=warn))
            except (MalformedInterval, ReversedInterval) as exc:
                raise type(exc)(f"frame {feature_id!r}: {exc}") from None
    for key, value in properties.items():
        if key == "events" and isinstance(raw, list):
            continue
        if not isinstance(value, str):
            continue
        try:
            events.append(parse_interval(value, label=key, on_warning=warn))
        except MalformedInterval:
            continue  # an ordinary string property, e.g. "name"
        except ReversedInterval as exc:
            raise ReversedInterval(f"frame {feature_id!r}: {exc}") from None
    return events


def parse_frames(geojson_text: str,
                 ellipsoid: geodesy.Ellipsoid = geodesy.WGS84,
                 on_warning: WarnFn | None = None,
                 ) -> list[tuple[FrameLine, list[EventInterval]]]:
    """Parse a GeoJSON FeatureCollection of frame lines with event intervals.

    Every feature with a two-position LineString yields one frame; features
    with other geometry types are skipped with a warning. A LineString with
    any other number of positions, coincident endpoints, or a frame without
    a single parsable interval are hard errors.
    """
    warnings: list[str] = []
    warn = warnings.append

    try:
        doc = json.loads(geojson_text)
    except json.JSONDecodeError as exc:
        raise NotFeatureCollection(f"frames input is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise NotFeatureCollection('frames input must have "type": "FeatureCollection"')
    features = doc.get("features")
    if not isinstance(features, list):
        raise NotFeatureCollection('FeatureCollection lacks a "features" array')

    frames: list[tuple[FrameLine, list[EventInterval]]] = []
    for index, feature in enumerate(features):
        if not isinstance(feature, dict):
            raise NotFeatureCollection(f"features[{index}] is not an object")
        feature_id = _feature_id(feature, index)
        geometry = feature.get("geometry") or {}
        if geometry.get("type") != "LineString":
            warn(f"frame {feature_id!r}: geometry is not a LineString; skipped")
            continue
        coords = geometry.get("coordinates")
        if not isinstance(coords, list) or len(coords) != 2:
            count = len(coords) if isinstance(coords, list) else "no"
            raise BadLineString(
                f"frame {feature_id!r}: LineString has {count} positions, need exactly 2")
        try:
            (lon1, lat1), (lon2, lat2) = ((float(c[0]), float(c[1])) for c in coords)
        except (TypeError, ValueError, IndexError):
            raise BadLineString(
                f"frame {feature_id!r}: LineString positions are not numeric "
                "[lon, lat] pairs") from None
        for lat in (lat1, lat2):
            if not -90.0 <= lat <= 90.0:
                raise BadLineString(
                    f"frame {feature_id!r}: latitude {lat} outside [-90, 90] "
                    "(positions must be [lon, lat] order)")

        def _frame_warn(message: str, _fid: str = feature_id) -> None:
            warn(f"frame {_fid!r}: {message}")

        try:
            frame = build_frame_line(feature_id, lat1, lon1, lat2, lon2, ellipsoid)
        except (CoincidentPoints, NearAntipodal) as exc:
            raise type(exc)(f"frame {feature_id!r}: {exc}") from None
        events = _feature_events(feature_id, feature.get("properties") or {},
                                 _frame_warn)
        if not events:
            raise NoEvents(f"frame {feature_id!r} has no parsable event interval")
        frames.append((frame, events))

    if on_warning is not None:
        for message in warnings:
            on_warning(message)
    return frames


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_gpx(gpx_text: str, trace_id: str,
              on_warning: WarnFn | None = None) -> Trace:
    """Parse GPX 1.0/1.1 text into a Trace.

    Track points from all tracks and segments are flattened in document
    order, then stably sorted by time. Points without a usable timestamp
    or position are skipped with a warning; a file with zero timed points
    is an error.
    """
    warn = on_warning if on_warning is not None else (lambda message: None)
    try:
        root = ET.fromstring(gpx_text)
    except ET.ParseError as exc:
        raise MalformedXml(f"not well-formed XML: {exc}") from None

    points: list[GeoPoint] = []
    saw_trkpt = False
    for elem in root.iter():
        if _local_name(elem.tag) != "trkpt":
            continue
        saw_trkpt = True
        time_text = None
        for child in elem:
            if _local_name(child.tag) == "time":
                time_text = child.text
                break
        if time_text is None or not time_text.strip():
            warn("track point without <time> skipped")
            continue
        try:
            lat = float(elem.get("lat", ""))
            lon = float(elem.get("lon", ""))
        except ValueError:
            warn("track point with non-numeric lat/lon skipped")
            continue
        try:
            instant, _ = _parse_instant(time_text)
        except MalformedInterval:
            warn(f"track point with unparsable time {time_text.strip()!r} skipped")
            continue
        try:
            points.append(GeoPoint(lat_deg=lat, lon_deg=lon, time_utc=instant))
        except ValueError as exc:
            warn(f"track point skipped: {exc}")
            continue

    if not points:
        detail = "no timestamped track points" if saw_trkpt else "no track points"
        raise NoTimedPoints(f"{detail} in GPX input")
    points.sort(key=lambda p: p.time_utc)
    return Trace(id=trace_id, points=tuple(points))


def _gpx_files(traces_dir: Path, recurse: bool) -> list[Path]:
    pattern = "**/*" if recurse else "*"
    files = [p for p in traces_dir.glob(pattern)
             if p.is_file() and p.suffix.lower() == ".gpx"]
    return sorted(files, key=lambda p: (p.stem, str(p)))


def load_inputs(frames_path: str | Path, traces_dir: str | Path,
                recurse: bool = False,
                ellipsoid: geodesy.Ellipsoid = geodesy.WGS84,
                ) -> tuple[list[tuple[FrameLine, list[EventInterval]]],
                           list[Trace], IngestReport]:
    """Load a frames file and a directory of .gpx traces.

    Frame parsing errors abort the load; per-trace-file failures become
    warnings. Duplicate trace ids (same file stem) get numeric suffixes.
    The result is deterministic: frames in document order, traces sorted
    by id.
    """
    frames_path = Path(frames_path)
    traces_dir = Path(traces_dir)
    report = IngestReport()

    try:
        frames_text = frames_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FramesFileUnreadable(f"cannot read frames file {frames_path}: {exc}") from None
    frames = parse_frames(
        frames_text, ellipsoid=ellipsoid,
        on_warning=lambda message: report.warnings.append((str(frames_path), message)))

    if not traces_dir.is_dir():
        raise NoTraces(f"traces directory {traces_dir} does not exist")
    files = _gpx_files(traces_dir, recurse)
    if not files:
        raise NoTraces(f"no .gpx files found in {traces_dir}")

    seen: dict[str, int] = {}
    traces: list[Trace] = []
    for path in files:
        count = seen.get(path.stem, 0) + 1
        seen[path.stem] = count
        trace_id = path.stem if count == 1 else f"{path.stem}_{count}"
        try:
            text = path.read_text(encoding="utf-8")
            traces.append(parse_gpx(
                text, trace_id,
                on_warning=lambda message, _p=path: report.warnings.append(
                    (str(_p), message))))
        except (OSError, MalformedXml, NoTimedPoints) as exc:
            report.warnings.append((str(path), f"trace skipped: {exc}"))
    traces.sort(key=lambda t: t.id)

    report.traces_loaded = len(traces)
    report.frames_loaded = len(frames)
    report.events_loaded = sum(len(events) for _, events in frames)
    return frames, traces, report
