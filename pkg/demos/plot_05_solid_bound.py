"""
Density bounds in 3-space
=========================

Longest chord, the central section orthogonal to it, and the resulting lower
bound on the lattice packing density of a symmetric polytope.
"""

import math

import numpy as np

from hexpack import bodies
from hexpack.bounds import (
    SMITH_CONSTANT,
    bound3,
    theorem1_chain,
    universal_constant,
    volume_chain_audit,
)

print(f"universal bound {universal_constant():.6f} (previous {SMITH_CONSTANT:.6f})")
print(f"chain at delta = 0.89265: {theorem1_chain(0.89265, 1 / math.sqrt(0.89265)):.6f}")

solids = [("cube", bodies.cube()),
          ("octahedron", bodies.octahedron()),
          ("ball (320 points)", bodies.icosphere_face_centers(2)),
          ("random", bodies.random_cs_polytope(np.random.default_rng(2), 24))]
for name, K in solids:
    rep = bound3(K)
    print(f"{name:18s} chord {rep.chord.length:.4f}  section {len(rep.cross_section):3d}-gon  "
          f"delta {rep.density.lower_bound:.6f}  bound {rep.bound:.6f}")

# The cube's section orthogonal to a main diagonal is a regular hexagon
print("cube bound vs 7/12:", bound3(bodies.cube()).bound - 7 / 12)

# Re-derive the bound from the volume inequality at random scales
audit = volume_chain_audit(bound3(bodies.cube()), n_random=100)
print(f"audit: {sum(r.passed for r in audit)}/{len(audit)} steps agree, "
      f"worst gap {max(abs(r.lhs - r.rhs) for r in audit):.1e}")
