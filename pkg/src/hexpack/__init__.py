"""Circumscribed hexagons, mixed areas and lattice packing density bounds
for centrally symmetric convex bodies."""
from .bounds import (
    SMITH_CONSTANT,
    TAMMELA_CONSTANT,
    Bound3Report,
    Lemma1Certificate,
    bound3,
    lemma1_certificate,
    theorem1_chain,
    universal_constant,
    volume_chain_audit,
    volume_chain_identity,
)
from .lattice import (
    CSHexagon,
    DensityEstimate,
    Lattice2,
    SearchConfig,
    circumscribed_hexagon,
    grid_hexagon_oracle,
    min_circumscribed_hexagon,
    tiling_lattice,
    verify_packing,
)
from .mixed import minkowski_inequality_check, mixed_area, mixed_area_oracle
from .planar import (
    CSPolygon,
    SlabSpec,
    area,
    contains,
    intersection_area,
    minkowski_sum,
    slab_intersection,
    support,
    validate_cs_polygon,
)
from .solid import CSPolytope3, central_cross_section, longest_chord, validate_cs_polytope

__version__ = "0.1.0"
