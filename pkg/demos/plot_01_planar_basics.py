"""
Centrally symmetric polygons
============================

Build, validate and combine symmetric polygons.
"""

import numpy as np

from hexpack import bodies
from hexpack.planar import minkowski_sum, slab_intersection, SlabSpec, validate_cs_polygon

# Raw vertices can come in any rotation or orientation; validation puts them
# in counter-clockwise order and checks that every v has -v.
raw = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
P = validate_cs_polygon(raw[::-1])
print("square:", P.vertices.tolist(), "area", P.area)

# Support function h_P(u) = max <x, u>
print("support at 45 degrees:", P.support([np.sqrt(0.5), np.sqrt(0.5)]))

# The Minkowski sum of a square and a diamond is an octagon
D = bodies.diamond()
S = minkowski_sum(P, D)
print("square + diamond has", len(S), "vertices, area", round(S.area, 6))

# A centrally symmetric hexagon is the intersection of three slabs
slabs = [SlabSpec.from_angle(a, 1.0) for a in (0.0, np.pi / 3, 2 * np.pi / 3)]
H = slab_intersection(slabs)
print("three unit slabs at 60 degrees:", len(H), "vertices, area", round(H.area, 6),
      "expected", round(2 * np.sqrt(3), 6))

# Invalid input is rejected with a specific error
try:
    validate_cs_polygon([[1, 0], [0, 1], [-1, 0], [0, -0.5]])
except ValueError as exc:
    print("rejected:", type(exc).__name__, "-", exc)
