"""
Mixed area
==========

The mixed area (K, L) by the edge formula, checked against |K + L|.
"""

import numpy as np

from hexpack import bodies
from hexpack.mixed import minkowski_inequality_check, mixed_area, mixed_area_oracle

K = bodies.disk_polygon(512)
H = bodies.regular_hexagon(1.0)

# (K, L) = 1/2 sum over edges e of L of h_K(n_e) |e|
a = mixed_area(K, H)
b = mixed_area_oracle(K, H)
print(f"(disk, hexagon) edge formula {a.value:.12f}")
print(f"(disk, hexagon) from |K+L|   {b.value:.12f}")
# A unit disk against any polygon gives half its perimeter
print("half the hexagon perimeter:  ", 3.0)

# (K, K) is the area of K
print("(H, H) =", mixed_area(H, H).value, " |H| =", H.area)

# Minkowski's inequality (K, L)^2 >= |K| |L|, with equality for homothets
rng = np.random.default_rng(1)
for _ in range(3):
    K1, L1 = bodies.random_cs_polygon(rng, 12), bodies.random_cs_polygon(rng, 12)
    chk = minkowski_inequality_check(K1, L1)
    print(f"lhs {chk.lhs:.6f} >= rhs {chk.rhs:.6f}: {chk.passed}")
chk = minkowski_inequality_check(H, bodies.regular_hexagon(2.0))
print(f"homothetic hexagons: slack {chk.slack:.2e}")
