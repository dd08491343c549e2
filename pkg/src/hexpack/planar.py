"""Planar centrally symmetric convex polygons.

Everything here works on plain float64 numpy arrays. Geometric predicates use
an absolute tolerance ``EPS_GEO`` suited to bodies whose coordinates are of
order one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateArea,
    GeometryError,
    NotCentrallySymmetric,
    NotConvex,
    Unbounded,
    ZeroDirection,
)

EPS_GEO = 1e-9
SYM_TOL = 1e-6


def cross2(a, b):
    """z-component of the cross product, broadcast over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def unit(angle):
    return np.array([math.cos(angle), math.sin(angle)])


def shoelace(vertices: np.ndarray) -> float:
    """Signed area of a closed vertex loop (positive when counterclockwise)."""
    v = np.asarray(vertices, dtype=float)
    if len(v) < 3:
        return 0.0
    return 0.5 * float(np.sum(cross2(v, np.roll(v, -1, axis=0))))


@dataclass(frozen=True, eq=False)
class CSPolygon:
    """Centrally symmetric convex polygon, counterclockwise, 2m vertices.

    Instances should come from :func:`validate_cs_polygon` (or one of the
    constructions built on it), which canonicalizes the vertex order so that
    ``vertices[i + m] == -vertices[i]``.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"CSPolygon(n={len(self)}, area={self.area:.6g})"

    @property
    def m(self) -> int:
        return len(self.vertices) // 2

    @cached_property
    def area(self) -> float:
        return shoelace(self.vertices)

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    @property
    def edge_normals(self) -> np.ndarray:
        """Outward unit normals, one per edge."""
        e = self.edges
        n = np.column_stack([e[:, 1], -e[:, 0]])
        return n / np.linalg.norm(n, axis=1)[:, None]

    @property
    def normal_angles(self) -> np.ndarray:
        """Distinct edge-normal directions reduced to [0, pi), sorted."""
        n = self.edge_normals[: self.m]
        ang = np.mod(np.arctan2(n[:, 1], n[:, 0]), math.pi)
        return np.sort(ang)

    def support(self, direction) -> float:
        return support(self, direction)

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist()}


def _merge_collinear(v: np.ndarray, tol: float) -> np.ndarray:
    """Drop duplicate and collinear vertices; reject reflex turns."""
    while True:
        n = len(v)
        if n < 3:
            return v
        prev = np.roll(v, 1, axis=0)
        nxt = np.roll(v, -1, axis=0)
        chord = np.linalg.norm(nxt - prev, axis=1)
        dup = np.linalg.norm(v - prev, axis=1) <= tol
        turn = cross2(v - prev, nxt - v)
        with np.errstate(divide="ignore", invalid="ignore"):
            dist = np.where(chord > tol, turn / chord, 0.0)
        if np.any(dist < -tol):
            raise NotConvex("vertex sequence turns clockwise")
        flag = dup | (dist <= tol)
        if not flag.any():
            return v
        # never drop two neighbours in one pass (the loop wraps around)
        drop = np.zeros(n, dtype=bool)
        drop[0] = flag[0]
        for i in range(1, n):
            drop[i] = flag[i] and not drop[i - 1] and not (i == n - 1 and drop[0])
        v = v[~drop]


def validate_cs_polygon(raw_vertices, tol: float = EPS_GEO,
                        sym_tol: float = SYM_TOL) -> CSPolygon:
    """Check and canonicalize an ordered vertex loop.

    The loop may be given in either orientation. Collinear vertices are
    merged, mirror pairs are averaged, and the result starts at the vertex of
    smallest polar angle in [0, 2*pi) (then smallest radius).

    Raises:
        NotConvex, NotCentrallySymmetric, DegenerateArea
    """
    v = np.asarray(raw_vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise GeometryError(f"expected an (n, 2) vertex array, got shape {v.shape}")
    if len(v) < 4:
        raise GeometryError("a centrally symmetric polygon needs at least 4 vertices")
    if not np.all(np.isfinite(v)):
        raise GeometryError("non-finite coordinate")

    signed = shoelace(v)
    if abs(signed) <= tol:
        raise DegenerateArea(f"area {signed:.3g} is not positive")
    if signed < 0:
        v = v[::-1]
    v = _merge_collinear(v, tol)
    if len(v) < 4 or len(v) % 2:
        raise NotCentrallySymmetric(f"{len(v)} vertices after merging collinear runs")

    ang = np.mod(np.arctan2(v[:, 1], v[:, 0]), 2 * math.pi)
    ang[ang > 2 * math.pi - 1e-9] = 0.0
    start = np.lexsort((np.linalg.norm(v, axis=1), ang))[0]
    v = np.roll(v, -start, axis=0)
    m = len(v) // 2
    asym = float(np.max(np.linalg.norm(v[:m] + v[m:], axis=1)))
    if asym > sym_tol:
        raise NotCentrallySymmetric(f"mirror pairs differ by {asym:.3g}")
    half = 0.5 * (v[:m] - v[m:])
    v = np.vstack([half, -half])

    turn = cross2(v - np.roll(v, 1, axis=0), np.roll(v, -1, axis=0) - v)
    if np.any(turn <= 0):
        raise NotConvex("polygon is not strictly convex")
    poly = CSPolygon(v)
    if poly.area <= tol:
        raise DegenerateArea(f"area {poly.area:.3g} is not positive")
    return poly


def convex_hull_points(points: np.ndarray) -> np.ndarray:
    """Counterclockwise hull of a 2D point set (Andrew's monotone chain)."""
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) < 3:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in pts[::-1]:
        while len(upper) >= 2 and _turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _turn(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def cs_hull(points, tol: float = EPS_GEO) -> CSPolygon:
    """Hull of ``points`` together with their reflections through the origin."""
    pts = np.asarray(points, dtype=float)
    return validate_cs_polygon(convex_hull_points(np.vstack([pts, -pts])), tol=tol)


def area(P: CSPolygon) -> float:
    return P.area


def support(P: CSPolygon, direction) -> float:
    """Support function max <v, u> over the vertices of ``P``.

    The direction is not normalized, so the value is positively homogeneous
    in ``direction``.
    """
    u = np.asarray(direction, dtype=float)
    if not np.any(u):
        raise ZeroDirection("support function needs a nonzero direction")
    return float(np.max(P.vertices @ u))


def support_many(P: CSPolygon, directions: np.ndarray) -> np.ndarray:
    """Vectorized support for an (k, 2) array of directions."""
    return np.max(P.vertices @ np.asarray(directions, dtype=float).T, axis=0)


def support_at_angles(P: CSPolygon, angles) -> np.ndarray:
    angles = np.asarray(angles, dtype=float)
    d = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    return support_many(P, d.reshape(-1, 2)).reshape(angles.shape)


def transform(P: CSPolygon, matrix) -> CSPolygon:
    """Image of ``P`` under a nonsingular linear map."""
    M = np.asarray(matrix, dtype=float)
    v = P.vertices @ M.T
    if np.linalg.det(M) < 0:
        v = v[::-1]
    return validate_cs_polygon(v)


def rotate(P: CSPolygon, angle: float) -> CSPolygon:
    c, s = math.cos(angle), math.sin(angle)
    return transform(P, [[c, -s], [s, c]])


def scale(P: CSPolygon, factor: float) -> CSPolygon:
    if factor <= 0:
        raise GeometryError("scale factor must be positive")
    return CSPolygon(P.vertices * factor)


def _bottom_index(v: np.ndarray) -> int:
    return int(np.lexsort((v[:, 0], v[:, 1]))[0])


def minkowski_sum(P: CSPolygon, Q: CSPolygon) -> CSPolygon:
    """P + Q by merging the two edge sequences in angular order."""
    i, j = _bottom_index(P.vertices), _bottom_index(Q.vertices)
    ep = np.roll(P.vertices, -i, axis=0)
    eq = np.roll(Q.vertices, -j, axis=0)
    edges = np.vstack([np.roll(ep, -1, axis=0) - ep, np.roll(eq, -1, axis=0) - eq])
    ang = np.mod(np.arctan2(edges[:, 1], edges[:, 0]), 2 * math.pi)
    order = np.argsort(ang, kind="stable")
    start = ep[0] + eq[0]
    verts = start + np.vstack([np.zeros(2), np.cumsum(edges[order], axis=0)[:-1]])
    return validate_cs_polygon(verts)


@dataclass(frozen=True)
class SlabSpec:
    """The strip |<x, normal>| <= half_width."""

    normal: tuple
    half_width: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if n.shape != (2,) or abs(np.linalg.norm(n) - 1.0) > EPS_GEO:
            raise GeometryError(f"slab normal {self.normal} is not a unit vector")
        if not self.half_width > 0:
            raise GeometryError("slab half-width must be positive")
        object.__setattr__(self, "normal", (float(n[0]), float(n[1])))
        object.__setattr__(self, "half_width", float(self.half_width))

    @classmethod
    def from_angle(cls, angle: float, half_width: float) -> "SlabSpec":
        return cls((math.cos(angle), math.sin(angle)), half_width)

    @property
    def angle(self) -> float:
        return math.atan2(self.normal[1], self.normal[0]) % math.pi


def _clip(poly: np.ndarray, n: np.ndarray, c: float) -> np.ndarray:
    """Sutherland-Hodgman step: keep the part of ``poly`` with <x, n> <= c."""
    if len(poly) == 0:
        return poly
    s = poly @ n - c
    inside = s <= 0
    if inside.all():
        return poly
    if not inside.any():
        return poly[:0]
    nxt = np.roll(poly, -1, axis=0)
    s_nxt = np.roll(s, -1)
    crossing = inside != (s_nxt <= 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(crossing, s / (s - s_nxt), 0.0)
    hit = poly + t[:, None] * (nxt - poly)
    # per edge: the start vertex if kept, then the crossing point if any
    cand = np.stack([poly, hit], axis=1).reshape(-1, 2)
    keep = np.stack([inside, crossing], axis=1).reshape(-1)
    return cand[keep]


def slab_intersection(slabs: Sequence[SlabSpec]) -> CSPolygon:
    """Intersection of two or three origin-centred slabs."""
    slabs = list(slabs)
    if not 2 <= len(slabs) <= 3:
        raise GeometryError("slab_intersection takes 2 or 3 slabs")
    normals = np.array([s.normal for s in slabs])
    sines = [(abs(cross2(normals[a], normals[b])), a, b)
             for a in range(len(slabs)) for b in range(a + 1, len(slabs))]
    best, a, b = max(sines)
    if best < 1e-12:
        raise Unbounded("all slab normals are parallel")
    # parallelogram spanned by slabs a and b
    na, nb = normals[a], normals[b]
    ha, hb = slabs[a].half_width, slabs[b].half_width
    M = np.array([na, nb])
    corners = [np.linalg.solve(M, [sa * ha, sb * hb])
               for sa, sb in ((1, 1), (-1, 1), (-1, -1), (1, -1))]
    poly = np.array(corners)
    if shoelace(poly) < 0:
        poly = poly[::-1]
    for k, s in enumerate(slabs):
        if k in (a, b):
            continue
        n = np.asarray(s.normal)
        poly = _clip(poly, n, s.half_width)
        poly = _clip(poly, -n, s.half_width)
    return validate_cs_polygon(poly)


def slab_activity(P: CSPolygon, slabs: Sequence[SlabSpec], tol: float = EPS_GEO) -> list[bool]:
    """For each slab, whether it contributes an edge pair of ``P``.

    A slab whose boundary only touches ``P`` at a vertex counts as redundant.
    """
    active = []
    for s in slabs:
        n = np.asarray(s.normal)
        on_line = np.abs(P.vertices @ n - s.half_width) <= tol
        active.append(int(on_line.sum()) >= 2)
    return active


def contains(outer: CSPolygon, inner: CSPolygon, tol: float = EPS_GEO) -> bool:
    """True iff every vertex of ``inner`` lies in ``outer`` up to ``tol``."""
    a = outer.vertices
    e = outer.edges
    lengths = np.linalg.norm(e, axis=1)
    rel = inner.vertices[:, None, :] - a[None, :, :]
    dist = cross2(e[None, :, :], rel) / lengths[None, :]
    return bool(np.all(dist >= -tol))


def clip_polygon(subject: np.ndarray, clipper: CSPolygon) -> np.ndarray:
    """Vertices of ``subject`` clipped to the convex polygon ``clipper``."""
    poly = np.asarray(subject, dtype=float)
    for a, n in zip(clipper.vertices, clipper.edge_normals):
        poly = _clip(poly, n, float(a @ n))
        if len(poly) == 0:
            break
    return poly


def intersection_area(P: CSPolygon, Q: CSPolygon, offset=(0.0, 0.0)) -> float:
    """Area of (P + offset) intersected with Q; zero when they are disjoint."""
    moved = P.vertices + np.asarray(offset, dtype=float)
    return max(0.0, shoelace(clip_polygon(moved, Q)))
