"""Synthetic GPX/GeoJSON builders shared by the engine, CLI, and acceptance
tests. Points are placed on the ellipsoid with the independent direct
geodesic solver from oracles.py, never with the library under test."""

from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone

import oracles

UTC = timezone.utc


def ts(hour: int, minute: int = 0, second: int = 0,
       microsecond: int = 0) -> datetime:
    return datetime(2017, 6, 10, hour, minute, second, microsecond, tzinfo=UTC)


def iso(instant: datetime) -> str:
    return instant.isoformat().replace("+00:00", "Z")


def gpx_doc(points, version: str = "1.1", namespace: bool = True) -> str:
    """GPX text with one trkseg; points are (lat, lon, datetime|None)."""
    rows = []
    for lat, lon, when in points:
        time_tag = f"<time>{iso(when)}</time>" if when is not None else ""
        rows.append(f'<trkpt lat="{lat!r}" lon="{lon!r}">{time_tag}</trkpt>')
    xmlns = (f' xmlns="http://www.topografix.com/GPX/1/{version[-1]}"'
             if namespace else "")
    return ('<?xml version="1.0" encoding="UTF-8"?>'
            f'<gpx version="{version}" creator="fixtures"{xmlns}>'
            f'<trk><trkseg>{"".join(rows)}</trkseg></trk></gpx>')


def frame_feature(frame_id, origin, target, properties) -> dict:
    """GeoJSON feature for a frame line; origin/target are (lat, lon)."""
    feature = {
        "type": "Feature",
        "geometry": {"type": "LineString",
                     "coordinates": [[origin[1], origin[0]], [target[1], target[0]]]},
        "properties": properties,
    }
    if frame_id is not None:
        feature["id"] = frame_id
    return feature


def frames_doc(features) -> str:
    return json.dumps({"type": "FeatureCollection", "features": list(features)})


def line_walk(origin, azimuth_deg, start, count, step_m=1.0, step_s=1.0):
    """(lat, lon, time) samples walking a geodesic line at constant speed."""
    points = []
    for i in range(count):
        lat, lon = oracles.vincenty_direct(origin[0], origin[1], azimuth_deg,
                                           i * step_m)
        points.append((lat, lon, start + timedelta(seconds=i * step_s)))
    return points


def two_fields_dataset(base_dir, length_m=100, separation_m=1000.0):
    """The two-field comparison scenario: two frames 1 km apart with opposite
    azimuths, one trace that walks each frame's line during its own event.

    Writes frames.geojson and traces/player1.gpx under base_dir; returns
    (frames_path, traces_dir, field_length_m, event_duration_s).
    """
    origin_a = (-37.85, 145.0)
    origin_b = oracles.vincenty_direct(*origin_a, 90.0, separation_m)
    azimuth_a, azimuth_b = 40.0, 220.0
    target_a = oracles.vincenty_direct(*origin_a, azimuth_a, length_m)
    target_b = oracles.vincenty_direct(*origin_b, azimuth_b, length_m)

    duration_s = length_m  # 1 m/s walk covers the field in length_m seconds
    event_a = (ts(5, 0, 0), ts(5, 0, 0) + timedelta(seconds=duration_s))
    event_b = (ts(6, 0, 0), ts(6, 0, 0) + timedelta(seconds=duration_s))

    frames_path = base_dir / "frames.geojson"
    frames_path.write_text(frames_doc([
        frame_feature("fieldA", origin_a, target_a,
                      {"events": [f"{iso(event_a[0])}/{iso(event_a[1])}"]}),
        frame_feature("fieldB", origin_b, target_b,
                      {"events": [f"{iso(event_b[0])}/{iso(event_b[1])}"]}),
    ]), encoding="utf-8")

    walk = (line_walk(origin_a, azimuth_a, event_a[0], length_m + 1)
            + line_walk(origin_b, azimuth_b, event_b[0], length_m + 1))
    traces_dir = base_dir / "traces"
    traces_dir.mkdir()
    (traces_dir / "player1.gpx").write_text(gpx_doc(walk), encoding="utf-8")
    return frames_path, traces_dir, float(length_m), float(duration_s)
