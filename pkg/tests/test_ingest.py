"""Parsing tests: intervals, GeoJSON frames, GPX traces, directory loading."""

import json
from datetime import timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import frame_feature, frames_doc, gpx_doc, ts
from framelocal.errors import (
    BadLineString,
    CoincidentPoints,
    FramesFileUnreadable,
    MalformedInterval,
    MalformedXml,
    NoEvents,
    NotFeatureCollection,
    NoTimedPoints,
    NoTraces,
    ReversedInterval,
)
from framelocal.ingest import (
    format_interval,
    load_inputs,
    parse_frames,
    parse_gpx,
    parse_interval,
)
from framelocal.model import EventInterval

ORIGIN = (-37.85, 145.0)
TARGET = (-37.84, 145.001)


class TestParseInterval:
    def test_canonical_form(self):
        interval = parse_interval("2017-06-10T05:00:00Z/2017-06-10T05:20:00Z")
        assert interval.begin_utc == ts(5, 0)
        assert interval.end_utc == ts(5, 20)
        assert interval.duration_s == 1200.0
        assert interval.label == "e0"

    def test_offset_normalized_to_utc(self):
        interval = parse_interval("2017-06-10T15:00:00+10:00/2017-06-10T05:20:00Z")
        assert interval.begin_utc == ts(5, 0)
        assert interval.end_utc == ts(5, 20)
        assert interval.begin_utc.tzinfo == timezone.utc

    def test_reversed_rejected(self):
        with pytest.raises(ReversedInterval):
            parse_interval("2017-06-10T05:20:00Z/2017-06-10T05:00:00Z")

    @pytest.mark.parametrize("text", [
        "PT20M/2017-06-10T05:20:00Z",
        "2017-06-10T05:00:00Z/PT20M",
        "P1D/2017-06-10T05:20:00Z",
    ])
    def test_duration_forms_rejected(self, text):
        with pytest.raises(MalformedInterval):
            parse_interval(text)

    @pytest.mark.parametrize("text", [
        "2017-06-10T05:00:00Z",
        "not an interval",
        "a/b/c",
        "/2017-06-10T05:20:00Z",
        "2017-06-10T05:00:00Z/",
        "2017-06-10T05:00:00Z/oops",
    ])
    def test_malformed_rejected(self, text):
        with pytest.raises(MalformedInterval):
            parse_interval(text)

    def test_naive_assumed_utc_with_warning(self):
        warnings = []
        interval = parse_interval("2017-06-10T05:00:00/2017-06-10T05:20:00Z",
                                  on_warning=warnings.append)
        assert interval.begin_utc == ts(5, 0)
        assert len(warnings) == 1
        assert "assuming UTC" in warnings[0]

    def test_fractional_seconds_kept(self):
        interval = parse_interval(
            "2017-06-10T05:00:00.250Z/2017-06-10T05:00:01.750Z")
        assert interval.begin_utc.microsecond == 250000
        assert interval.duration_s == 1.5

    def test_custom_label(self):
        assert parse_interval("2017-06-10T05:00:00Z/2017-06-10T05:20:00Z",
                              label="round1").label == "round1"

    @given(begin=st.datetimes(timezones=st.just(timezone.utc),
                              min_value=ts(0).replace(tzinfo=None),
                              max_value=ts(12).replace(tzinfo=None)),
           extra=st.integers(0, 10 ** 6))
    @settings(max_examples=100, deadline=None)
    def test_format_parse_round_trip(self, begin, extra):
        from datetime import timedelta
        interval = EventInterval(begin_utc=begin,
                                 end_utc=begin + timedelta(seconds=extra * 1e-3),
                                 label="e0")
        assert parse_interval(format_interval(interval)) == interval


class TestParseFrames:
    def test_events_array(self):
        doc = frames_doc([frame_feature(
            None, ORIGIN, TARGET,
            {"events": ["2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"]})])
        frames = parse_frames(doc)
        assert len(frames) == 1
        frame, events = frames[0]
        assert frame.id == "f0"
        assert [e.label for e in events] == ["e0"]
        assert frame.length_m > 0.0
        assert 0.0 <= frame.azimuth_deg < 360.0

    def test_named_scalar_properties(self):
        doc = frames_doc([frame_feature(
            None, ORIGIN, TARGET,
            {"round1": "2017-06-10T05:00:00Z/2017-06-10T05:20:00Z",
             "round2": "2017-06-10T06:00:00Z/2017-06-10T06:20:00Z"})])
        [(_, events)] = parse_frames(doc)
        assert [e.label for e in events] == ["round1", "round2"]

    def test_three_point_linestring_rejected(self):
        feature = frame_feature("bad", ORIGIN, TARGET, {"events": []})
        feature["geometry"]["coordinates"].append([145.002, -37.83])
        with pytest.raises(BadLineString, match="bad"):
            parse_frames(frames_doc([feature]))

    def test_not_feature_collection(self):
        with pytest.raises(NotFeatureCollection):
            parse_frames(json.dumps({"type": "Feature"}))
        with pytest.raises(NotFeatureCollection):
            parse_frames("{not json")

    def test_swapped_coordinate_order_caught(self):
        # [lat, lon] instead of [lon, lat] puts 145 where a latitude belongs
        doc = frames_doc([frame_feature(
            "swapped", (145.0, -37.85), (145.001, -37.84),
            {"events": ["2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"]})])
        with pytest.raises(BadLineString, match="swapped"):
            parse_frames(doc)

    def test_coincident_endpoints(self):
        doc = frames_doc([frame_feature(
            "dup", ORIGIN, ORIGIN,
            {"events": ["2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"]})])
        with pytest.raises(CoincidentPoints, match="dup"):
            parse_frames(doc)

    def test_no_events_is_an_error(self):
        doc = frames_doc([frame_feature("empty", ORIGIN, TARGET,
                                        {"name": "empty", "surface": "grass"})])
        with pytest.raises(NoEvents, match="empty"):
            parse_frames(doc)

    def test_malformed_interval_names_feature(self):
        doc = frames_doc([frame_feature(
            "oops", ORIGIN, TARGET, {"events": ["2017-06-10T05:00:00Z/nope"]})])
        with pytest.raises(MalformedInterval, match="oops"):
            parse_frames(doc)

    def test_reversed_scalar_property_is_an_error(self):
        doc = frames_doc([frame_feature(
            "rev", ORIGIN, TARGET,
            {"round1": "2017-06-10T05:20:00Z/2017-06-10T05:00:00Z"})])
        with pytest.raises(ReversedInterval, match="rev"):
            parse_frames(doc)

    def test_non_linestring_skipped_with_warning(self):
        warnings = []
        doc = frames_doc([
            {"type": "Feature", "id": "pt",
             "geometry": {"type": "Point", "coordinates": [145.0, -37.85]},
             "properties": {}},
            frame_feature("line", ORIGIN, TARGET,
                          {"events": ["2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"]}),
        ])
        frames = parse_frames(doc, on_warning=warnings.append)
        assert [frame.id for frame, _ in frames] == ["line"]
        assert any("pt" in w for w in warnings)

    def test_id_fallbacks(self):
        interval = "2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"
        doc = frames_doc([
            frame_feature("explicit", ORIGIN, TARGET, {"events": [interval]}),
            frame_feature(None, ORIGIN, TARGET,
                          {"name": "named", "events": [interval]}),
            frame_feature(None, ORIGIN, TARGET, {"events": [interval]}),
        ])
        frames = parse_frames(doc)
        assert [frame.id for frame, _ in frames] == ["explicit", "named", "f2"]

    def test_coordinates_are_lon_lat_order(self):
        # a due-north frame: same lon, increasing lat
        doc = frames_doc([frame_feature(
            "north", (10.0, 20.0), (10.1, 20.0),
            {"events": ["2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"]})])
        [(frame, _)] = parse_frames(doc)
        assert frame.origin_lat_deg == 10.0
        assert frame.origin_lon_deg == 20.0
        assert frame.azimuth_deg == pytest.approx(0.0, abs=1e-9)

    def test_document_order_preserved(self):
        interval = "2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"
        doc = frames_doc([
            frame_feature(f"z{9 - i}", ORIGIN, TARGET, {"events": [interval]})
            for i in range(4)
        ])
        frames = parse_frames(doc)
        assert [frame.id for frame, _ in frames] == ["z9", "z8", "z7", "z6"]


class TestParseGpx:
    def test_single_segment(self):
        text = gpx_doc([(-37.85, 145.0, ts(5, 0, i)) for i in range(3)])
        trace = parse_gpx(text, "t1")
        assert trace.id == "t1"
        assert len(trace.points) == 3
        assert trace.points[0].time_utc == ts(5, 0, 0)

    def test_two_segments_flattened(self):
        seg = "".join(
            f'<trkpt lat="1.0" lon="2.0"><time>2017-06-10T05:00:{i:02d}Z</time></trkpt>'
            for i in range(5))
        seg2 = "".join(
            f'<trkpt lat="1.0" lon="2.0"><time>2017-06-10T05:01:{i:02d}Z</time></trkpt>'
            for i in range(5))
        text = ('<?xml version="1.0"?>'
                '<gpx version="1.1" xmlns="http://www.topografix.com/GPX/1/1">'
                f'<trk><trkseg>{seg}</trkseg><trkseg>{seg2}</trkseg></trk></gpx>')
        assert len(parse_gpx(text, "t").points) == 10

    def test_all_points_untimed_is_an_error(self):
        text = gpx_doc([(-37.85, 145.0, None), (-37.84, 145.0, None)])
        with pytest.raises(NoTimedPoints):
            parse_gpx(text, "t")

    def test_untimed_points_skipped_with_warning(self):
        warnings = []
        text = gpx_doc([(-37.85, 145.0, ts(5)), (-37.84, 145.0, None)])
        trace = parse_gpx(text, "t", on_warning=warnings.append)
        assert len(trace.points) == 1
        assert len(warnings) == 1

    def test_points_sorted_by_time(self):
        text = gpx_doc([(0.0, 0.0, ts(5, 0, 2)), (0.0, 0.1, ts(5, 0, 0)),
                        (0.0, 0.2, ts(5, 0, 1))])
        trace = parse_gpx(text, "t")
        assert [p.time_utc.second for p in trace.points] == [0, 1, 2]

    def test_gpx_10_namespace(self):
        text = ('<?xml version="1.0"?>'
                '<gpx version="1.0" xmlns="http://www.topografix.com/GPX/1/0">'
                '<trk><trkseg><trkpt lat="1.0" lon="2.0">'
                '<time>2017-06-10T05:00:00Z</time></trkpt></trkseg></trk></gpx>')
        assert len(parse_gpx(text, "t").points) == 1

    def test_malformed_xml(self):
        with pytest.raises(MalformedXml):
            parse_gpx("<gpx><trk>", "t")

    def test_waypoints_and_routes_ignored(self):
        text = ('<?xml version="1.0"?>'
                '<gpx version="1.1" xmlns="http://www.topografix.com/GPX/1/1">'
                '<wpt lat="9.0" lon="9.0"><time>2017-06-10T04:00:00Z</time></wpt>'
                '<rte><rtept lat="8.0" lon="8.0">'
                '<time>2017-06-10T04:00:00Z</time></rtept></rte>'
                '<trk><trkseg><trkpt lat="1.0" lon="2.0">'
                '<time>2017-06-10T05:00:00Z</time></trkpt></trkseg></trk></gpx>')
        trace = parse_gpx(text, "t")
        assert len(trace.points) == 1
        assert trace.points[0].lat_deg == 1.0

    def test_subsecond_times_not_truncated(self):
        text = gpx_doc([(0.0, 0.0, ts(5, 0, 0, 123000))])
        assert parse_gpx(text, "t").points[0].time_utc.microsecond == 123000

    def test_naive_gpx_time_taken_as_utc(self):
        text = ('<?xml version="1.0"?>'
                '<gpx version="1.1" xmlns="http://www.topografix.com/GPX/1/1">'
                '<trk><trkseg><trkpt lat="1.0" lon="2.0">'
                '<time>2017-06-10T05:00:00</time></trkpt></trkseg></trk></gpx>')
        assert parse_gpx(text, "t").points[0].time_utc == ts(5)

    def test_bad_latitude_skipped_with_warning(self):
        warnings = []
        text = gpx_doc([(95.0, 145.0, ts(5)), (-37.84, 145.0, ts(5, 1))])
        trace = parse_gpx(text, "t", on_warning=warnings.append)
        assert len(trace.points) == 1
        assert len(warnings) == 1


def _write_two_field_inputs(base):
    interval = "2017-06-10T05:00:00Z/2017-06-10T05:20:00Z"
    frames_path = base / "frames.geojson"
    frames_path.write_text(frames_doc(
        [frame_feature("f0", ORIGIN, TARGET, {"events": [interval]})]),
        encoding="utf-8")
    traces = base / "traces"
    traces.mkdir()
    return frames_path, traces


class TestLoadInputs:
    def test_extension_filter(self, tmp_path):
        frames_path, traces = _write_two_field_inputs(tmp_path)
        (traces / "a.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        (traces / "b.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        (traces / "notes.txt").write_text("not a trace")
        frames, traces_loaded, report = load_inputs(frames_path, traces)
        assert [t.id for t in traces_loaded] == ["a", "b"]
        assert report.traces_loaded == 2
        assert report.frames_loaded == 1
        assert report.events_loaded == 1
        assert report.warnings == []

    def test_corrupt_file_isolated(self, tmp_path):
        frames_path, traces = _write_two_field_inputs(tmp_path)
        (traces / "a.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        (traces / "broken.gpx").write_text("<gpx><trk>")
        (traces / "c.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        _, traces_loaded, report = load_inputs(frames_path, traces)
        assert [t.id for t in traces_loaded] == ["a", "c"]
        assert len(report.warnings) == 1
        assert "broken.gpx" in report.warnings[0][0]

    def test_empty_directory(self, tmp_path):
        frames_path, traces = _write_two_field_inputs(tmp_path)
        with pytest.raises(NoTraces):
            load_inputs(frames_path, traces)

    def test_missing_directory(self, tmp_path):
        frames_path, _ = _write_two_field_inputs(tmp_path)
        with pytest.raises(NoTraces):
            load_inputs(frames_path, tmp_path / "nowhere")

    def test_unreadable_frames_file(self, tmp_path):
        with pytest.raises(FramesFileUnreadable):
            load_inputs(tmp_path / "missing.geojson", tmp_path)

    def test_recursion_flag(self, tmp_path):
        frames_path, traces = _write_two_field_inputs(tmp_path)
        (traces / "a.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        nested = traces / "sub"
        nested.mkdir()
        (nested / "b.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        _, flat, _ = load_inputs(frames_path, traces)
        assert [t.id for t in flat] == ["a"]
        _, deep, _ = load_inputs(frames_path, traces, recurse=True)
        assert [t.id for t in deep] == ["a", "b"]

    def test_duplicate_stems_suffixed(self, tmp_path):
        frames_path, traces = _write_two_field_inputs(tmp_path)
        (traces / "a.gpx").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        nested = traces / "sub"
        nested.mkdir()
        (nested / "a.gpx").write_text(gpx_doc([(0.0, 0.0, ts(6))]))
        _, traces_loaded, _ = load_inputs(frames_path, traces, recurse=True)
        assert [t.id for t in traces_loaded] == ["a", "a_2"]

    def test_uppercase_extension_accepted(self, tmp_path):
        frames_path, traces = _write_two_field_inputs(tmp_path)
        (traces / "A.GPX").write_text(gpx_doc([(0.0, 0.0, ts(5))]))
        _, traces_loaded, _ = load_inputs(frames_path, traces)
        assert [t.id for t in traces_loaded] == ["A"]
