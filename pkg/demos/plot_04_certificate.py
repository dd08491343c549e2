"""
A mixed-area certificate
========================

For any symmetric hexagon (or parallelogram) H, (C, H) >= sqrt(|C| |H| / delta),
where delta is a lower bound on the lattice packing density of C. The
certificate records each intermediate step.
"""

import numpy as np

from hexpack import bodies
from hexpack.bounds import lemma1_certificate
from hexpack.lattice import CSHexagon

# Equality case: a disk against a regular hexagon, both sides near 3
C = bodies.disk_polygon(512)
H = CSHexagon.from_polygon(bodies.regular_hexagon(1.0))
cert = lemma1_certificate(C, H)
print(f"lhs {cert.lhs:.6f}  rhs {cert.rhs:.6f}  pass {cert.passed}")
for step in cert.steps:
    print(f"  {'ok ' if step.passed else 'BAD'} {step.name}: {step.lhs:.9g} {step.relation} {step.rhs:.9g}")

# A random pair has room to spare
rng = np.random.default_rng(5)
C = bodies.random_cs_polygon(rng, 30)
H = CSHexagon.from_polygon(bodies.random_cs_hexagon(rng))
cert = lemma1_certificate(C, H)
print(f"random pair: slack {cert.slack:.6f}, pass {cert.passed}")

# An unrealistically small density bound makes the final step fail
cert = lemma1_certificate(bodies.disk_polygon(256), CSHexagon.from_polygon(bodies.regular_hexagon()),
                          delta_C=0.5)
print("with delta = 0.5:", "pass" if cert.passed else "fail", f"(slack {cert.slack:.4f})")
