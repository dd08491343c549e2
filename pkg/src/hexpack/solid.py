"""Centrally symmetric convex polytopes in 3-space: longest chord and the
central cross-section orthogonal to it."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, cKDTree

from .errors import DegenerateSection, GeometryError, NotCentrallySymmetric
from .planar import CSPolygon, EPS_GEO, cs_hull

TIE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class CSPolytope3:
    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @cached_property
    def hull(self) -> ConvexHull:
        return ConvexHull(self.vertices)

    @property
    def volume(self) -> float:
        return float(self.hull.volume)

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist()}


def validate_cs_polytope(raw_vertices, tol: float = 1e-6) -> CSPolytope3:
    """Check central symmetry (every v has -v in the list) and full dimension."""
    v = np.asarray(raw_vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3 or len(v) < 6:
        raise GeometryError(f"expected at least 6 points of shape (n, 3), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise GeometryError("non-finite coordinate")
    dist, _ = cKDTree(v).query(-v)
    if np.max(dist) > tol:
        raise NotCentrallySymmetric(f"a vertex has no mirror partner (gap {np.max(dist):.3g})")
    K = CSPolytope3(v)
    try:
        vol = K.volume
    except Exception as exc:  # qhull raises on flat input
        raise GeometryError("polytope is not full-dimensional") from exc
    if vol <= EPS_GEO:
        raise GeometryError(f"polytope volume {vol:.3g} is not positive")
    return K


@dataclass(frozen=True)
class Chord3:
    direction: tuple
    length: float
    vertex_index: int

    def to_dict(self):
        return {"direction": list(self.direction), "length": self.length,
                "vertex_index": self.vertex_index}


def longest_chord(K: CSPolytope3) -> Chord3:
    """Longest chord of K, which for a symmetric body runs through the origin.

    Its endpoints are +-x for the vertex x of largest norm; among tied
    vertices the lexicographically largest direction wins.
    """
    norms = np.linalg.norm(K.vertices, axis=1)
    top = norms.max()
    tied = np.flatnonzero(norms >= top * (1.0 - TIE_RTOL))
    dirs = K.vertices[tied] / norms[tied, None]
    # lexsort keys run last-to-first
    pick = tied[np.lexsort(dirs.T[::-1])[-1]]
    d = K.vertices[pick] / norms[pick]
    return Chord3(tuple(d.tolist()), float(2.0 * norms[pick]), int(pick))


def section_frame(normal) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal in-plane axes for the plane through 0 orthogonal to ``normal``.

    The first axis is the projection of the coordinate axis least aligned
    with the normal.
    """
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    axis = np.eye(3)[int(np.argmin(np.abs(n)))]
    e1 = axis - (axis @ n) * n
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1)


def central_cross_section(K: CSPolytope3, normal, frame=None,
                          tol: float = EPS_GEO) -> CSPolygon:
    """K intersected with the plane through 0 orthogonal to ``normal``.

    Every hull edge is cut against the plane; the cut points (plus vertices
    lying on the plane) are hulled in the in-plane frame.
    """
    n = np.asarray(normal, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise GeometryError("section normal must be a unit vector")
    e1, e2 = frame if frame is not None else section_frame(n)
    hull = K.hull
    pts = hull.points
    s = pts @ n
    simp = hull.simplices
    edges = np.vstack([simp[:, [0, 1]], simp[:, [1, 2]], simp[:, [0, 2]]])
    edges = np.unique(np.sort(edges, axis=1), axis=0)
    sa, sb = s[edges[:, 0]], s[edges[:, 1]]
    cut = (sa * sb < 0) & (np.abs(sa) > tol) & (np.abs(sb) > tol)
    t = sa[cut] / (sa[cut] - sb[cut])
    a, b = pts[edges[cut, 0]], pts[edges[cut, 1]]
    section = a + t[:, None] * (b - a)
    on_plane = pts[np.abs(s) <= tol]
    section = np.vstack([section, on_plane])
    if len(section) < 2:
        raise DegenerateSection("plane misses the interior of K")
    planar = np.column_stack([section @ e1, section @ e2])
    try:
        C = cs_hull(planar)
    except GeometryError as exc:
        raise DegenerateSection(str(exc)) from exc
    return C
