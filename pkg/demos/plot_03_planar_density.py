"""
Lattice packing density of a planar body
========================================

The smallest circumscribed centrally symmetric hexagon H of C gives a lattice
packing of C with density |C| / |H|, so that ratio is a certified lower bound.
"""

import math

import numpy as np

from hexpack import bodies
from hexpack.lattice import grid_hexagon_oracle, min_circumscribed_hexagon, verify_packing

for name, C in [("square", bodies.square()),
                ("hexagon", bodies.regular_hexagon()),
                ("octagon", bodies.regular_octagon()),
                ("disk (256-gon)", bodies.disk_polygon(256))]:
    est = min_circumscribed_hexagon(C)
    print(f"{name:16s} delta >= {est.lower_bound:.9f}")
print(f"{'disk exact':16s} {math.pi / math.sqrt(12):.9f}")

# The witness for the octagon, and a brute-force grid search over slab angles
C = bodies.regular_octagon()
est = min_circumscribed_hexagon(C)
print("witness slab angles (deg):", np.round(np.degrees(est.search_report.angles), 6))
# half-degree steps contain the octagon's edge normals (multiples of 22.5)
area, angles = grid_hexagon_oracle(C, 360)
print(f"grid oracle area {area:.12f} vs search {est.witness_hexagon.area:.12f}")

# The witness lattice really packs: translates only touch
chk = verify_packing(C, est.lattice, radius=3)
print("packing valid:", chk.valid, "worst overlap", chk.worst_overlap)
# Shrink the lattice and the translates overlap
chk = verify_packing(C, est.lattice.scaled(0.9), radius=3)
print("0.9-scaled lattice valid:", chk.valid, "worst overlap", round(chk.worst_overlap, 6))

# Random bodies stay well above 0.89265
rng = np.random.default_rng(0)
deltas = [min_circumscribed_hexagon(bodies.random_cs_polygon(rng, 20)).lower_bound
          for _ in range(50)]
print(f"50 random polygons: min {min(deltas):.6f}, mean {np.mean(deltas):.6f}")
