"""
Comparing play across two fields with the CLI
=============================================

The point of frame-local coordinates: two games on two fields, 1 km apart
and facing opposite directions, become directly comparable series. This
demo authors the inputs, then drives the installed command line exactly as
a user would.
"""

import json
import subprocess
import sys
import tempfile
from datetime import datetime, timedelta, timezone
from pathlib import Path

from framelocal import WGS84, build_frame_line, hom_inverse, hom_setup

base = Path(tempfile.mkdtemp(prefix="framelocal-demo-"))

# Two 100 m fields: A faces azimuth 40, B faces 220 (the other way).
field_a = build_frame_line("fieldA", -37.8500, 145.0000, -37.84931, 145.00073)
field_b = build_frame_line("fieldB", -37.8500, 145.0114, -37.85069, 145.01067)
print(f"fieldA azimuth {field_a.azimuth_deg:.1f}, "
      f"fieldB azimuth {field_b.azimuth_deg:.1f}")

(base / "frames.geojson").write_text(json.dumps({
    "type": "FeatureCollection",
    "features": [
        {"type": "Feature", "id": frame.id,
         "geometry": {"type": "LineString",
                      "coordinates": [[frame.origin_lon_deg, frame.origin_lat_deg],
                                      [frame.target_lon_deg, frame.target_lat_deg]]},
         "properties": {"events": [interval]}}
        for frame, interval in (
            (field_a, "2017-06-10T05:00:00Z/2017-06-10T05:01:40Z"),
            (field_b, "2017-06-10T06:00:00Z/2017-06-10T06:01:40Z"),
        )
    ],
}))

# One player log spanning both games: the same 0 -> 100 m run up each field,
# synthesized by inverting the local coordinates of the intended path.
fixes = []
for frame, start in ((field_a, datetime(2017, 6, 10, 5, 0, tzinfo=timezone.utc)),
                     (field_b, datetime(2017, 6, 10, 6, 0, tzinfo=timezone.utc))):
    params = hom_setup(WGS84, frame.origin_lat_deg, frame.origin_lon_deg,
                       frame.azimuth_deg)
    for i in range(101):
        lat, lon = hom_inverse(params, 0.0, float(i))
        stamp = (start + timedelta(seconds=i)).strftime("%Y-%m-%dT%H:%M:%SZ")
        fixes.append(f'<trkpt lat="{lat!r}" lon="{lon!r}"><time>{stamp}</time></trkpt>')
traces_dir = base / "traces"
traces_dir.mkdir()
(traces_dir / "player1.gpx").write_text(
    '<?xml version="1.0" encoding="UTF-8"?>'
    '<gpx version="1.1" xmlns="http://www.topografix.com/GPX/1/1">'
    f'<trk><trkseg>{"".join(fixes)}</trkseg></trk></gpx>')

# Drive the CLI. --plot writes an SVG overlay of all series in local space.
cmd = [sys.executable, "-m", "framelocal",
       "--frames", str(base / "frames.geojson"),
       "--traces", str(traces_dir),
       "--out", str(base / "out"),
       "--plot", str(base / "overlay.svg")]
print("+", " ".join(cmd[2:]))
proc = subprocess.run(cmd, capture_output=True, text=True, check=True)
print(proc.stdout.strip())

# Despite opposite global headings, the two series agree in local space.
for path in sorted((base / "out").iterdir()):
    rows = path.read_text().splitlines()
    last = rows[-1].split(",")
    print(f"{path.name}: last row x={float(last[0]):.3f} "
          f"y={float(last[1]):.2f} t={last[2]}")
print("overlay written to", base / "overlay.svg")
