"""Immutable domain types shared by every stage of the pipeline.

All latitudes/longitudes are WGS84 degrees, all instants are timezone-aware
UTC datetimes, and all local coordinates are meters/seconds. Validation
happens in the constructors so that invalid values cannot circulate after
ingestion.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import ReversedInterval


def normalize_longitude(lon_deg: float) -> float:
    """Reduce a longitude in degrees to the interval (-180, 180]."""
    lon = lon_deg % 360.0
    if lon > 180.0:
        lon -= 360.0
    elif lon <= -180.0:
        lon += 360.0
    return lon


def _require_utc(name: str, value: datetime) -> datetime:
    if not isinstance(value, datetime) or value.tzinfo is None:
        raise ValueError(f"{name} must be a timezone-aware datetime")
    return value.astimezone(timezone.utc)


@dataclass(frozen=True)
class GeoPoint:
    """One timestamped WGS84 fix."""

    lat_deg: float
    lon_deg: float
    time_utc: datetime

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat_deg <= 90.0:
            raise ValueError(f"latitude {self.lat_deg} outside [-90, 90]")
        object.__setattr__(self, "lon_deg", normalize_longitude(self.lon_deg))
        object.__setattr__(self, "time_utc", _require_utc("time_utc", self.time_utc))


@dataclass(frozen=True)
class Trace:
    """One GPS trajectory: a time-ordered sequence of fixes from one file."""

    id: str
    points: tuple[GeoPoint, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("trace id must be non-empty")
        object.__setattr__(self, "points", tuple(self.points))
        times = [p.time_utc for p in self.points]
        if any(a > b for a, b in zip(times, times[1:])):
            raise ValueError(f"trace {self.id!r}: points not in time order")


@dataclass(frozen=True)
class FrameLine:
    """A directed two-point reference line with derived azimuth and length.

    The azimuth is the initial geodesic bearing at the origin toward the
    target, degrees clockwise from true north.
    """

    id: str
    origin_lat_deg: float
    origin_lon_deg: float
    target_lat_deg: float
    target_lon_deg: float
    azimuth_deg: float
    length_m: float

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("frame id must be non-empty")
        for name in ("origin_lat_deg", "target_lat_deg"):
            lat = getattr(self, name)
            if not -90.0 <= lat <= 90.0:
                raise ValueError(f"{name} {lat} outside [-90, 90]")
        object.__setattr__(self, "origin_lon_deg", normalize_longitude(self.origin_lon_deg))
        object.__setattr__(self, "target_lon_deg", normalize_longitude(self.target_lon_deg))
        if not 0.0 <= self.azimuth_deg < 360.0:
            raise ValueError(f"azimuth_deg {self.azimuth_deg} outside [0, 360)")
        if not self.length_m > 0.0:
            raise ValueError("length_m must be positive")


@dataclass(frozen=True)
class EventInterval:
    """A closed UTC interval [begin, end] with a stable label."""

    begin_utc: datetime
    end_utc: datetime
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("event label must be non-empty")
        object.__setattr__(self, "begin_utc", _require_utc("begin_utc", self.begin_utc))
        object.__setattr__(self, "end_utc", _require_utc("end_utc", self.end_utc))
        if self.end_utc < self.begin_utc:
            raise ReversedInterval(
                f"event {self.label!r}: end {self.end_utc.isoformat()} precedes "
                f"begin {self.begin_utc.isoformat()}"
            )

    @property
    def duration_s(self) -> float:
        return (self.end_utc - self.begin_utc).total_seconds()


@dataclass(frozen=True)
class LocalPoint:
    """One sample in frame-local coordinates.

    x_m is meters perpendicular to the frame (positive to the right when
    facing along the frame direction), y_m is meters along the frame, and
    t_s is seconds since the event began.
    """

    x_m: float
    y_m: float
    t_s: float

    def __post_init__(self) -> None:
        if self.t_s < 0.0:
            raise ValueError(f"t_s {self.t_s} is negative")


@dataclass(frozen=True)
class EventSeries:
    """All in-interval samples of one (trace, frame, event) permutation."""

    trace_id: str
    frame_id: str
    event_label: str
    points: tuple[LocalPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("an event series must contain at least one point")
        ts = [p.t_s for p in self.points]
        if any(a > b for a, b in zip(ts, ts[1:])):
            raise ValueError("series points not in time order")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.trace_id, self.frame_id, self.event_label)
