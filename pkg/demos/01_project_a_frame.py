"""
Projecting points into a reference frame
========================================

A reference frame is a directed line between two points. Everything
projected into it comes back as (x, y): meters to the right of the line
direction, and meters along it.
"""

from framelocal import WGS84, build_frame_line, geodesic_inverse, hom_forward, hom_inverse, hom_setup

# A 100 m sport field in Melbourne, oriented roughly north-north-east.
# Drawing the line origin -> target fixes both the local origin and the
# direction that will become +y.
origin = (-37.8500, 145.0000)
target = (-37.84931, 145.00013)

frame = build_frame_line("field", *origin, *target)
print(f"frame azimuth {frame.azimuth_deg:.4f} deg, length {frame.length_m:.2f} m")

# Precompute the projection once; it is immutable and reusable.
params = hom_setup(WGS84, frame.origin_lat_deg, frame.origin_lon_deg,
                   frame.azimuth_deg)

# The origin lands at (0, 0) and the target at (0, length).
print("origin  ->", hom_forward(params, *origin))
print("target  ->", hom_forward(params, target[0], target[1]))

# A point east of the origin appears on the right (positive x) because the
# frame faces north-ish.
east_point = (-37.8500, 145.0005)
x, y = hom_forward(params, *east_point)
print(f"a point 44 m east -> x = {x:.2f} m (right), y = {y:.2f} m (along)")

# hom_inverse answers the opposite question: which geographic point sits at
# a given local coordinate? Useful for drawing local grids on a map.
midfield_lat, midfield_lon = hom_inverse(params, 0.0, frame.length_m / 2)
print(f"local (0, {frame.length_m / 2:.1f}) is at "
      f"({midfield_lat:.6f}, {midfield_lon:.6f})")

# The azimuth itself comes from the geodesic inverse problem, which is also
# available directly.
solution = geodesic_inverse(WGS84, *origin, *target)
print(f"geodesic check: azimuth {solution.forward_azimuth_deg:.4f} deg, "
      f"distance {solution.distance_m:.2f} m")
