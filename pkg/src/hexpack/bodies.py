"""Test bodies, seeded random generators, and body-file I/O."""
from __future__ import annotations

import itertools
import json
import math
from pathlib import Path

import numpy as np

from .errors import GeometryError
from .planar import CSPolygon, cs_hull, scale, validate_cs_polygon
from .solid import CSPolytope3, validate_cs_polytope


# -- planar families ---------------------------------------------------------

def regular_polygon(n: int, circumradius: float = 1.0, phase: float = 0.0) -> CSPolygon:
    """Regular n-gon (n even) with a vertex at angle ``phase``."""
    if n < 4 or n % 2:
        raise GeometryError("a centrally symmetric regular polygon needs an even n >= 4")
    a = phase + 2.0 * math.pi * np.arange(n // 2) / n
    half = circumradius * np.column_stack([np.cos(a), np.sin(a)])
    return validate_cs_polygon(np.vstack([half, -half]))


def square(half_side: float = 1.0) -> CSPolygon:
    return regular_polygon(4, half_side * math.sqrt(2.0), math.pi / 4)


def diamond(radius: float = 1.0) -> CSPolygon:
    return regular_polygon(4, radius)


def regular_hexagon(side: float = 1.0) -> CSPolygon:
    return regular_polygon(6, side)


def regular_octagon(circumradius: float = 1.0) -> CSPolygon:
    return regular_polygon(8, circumradius)


def disk_polygon(n: int = 256, radius: float = 1.0) -> CSPolygon:
    """Inscribed regular n-gon approximating a disk."""
    return regular_polygon(n, radius)


def pball_polygon(p: float, n: int = 256) -> CSPolygon:
    """Polygon with n boundary samples of the unit p-ball, p in [1, inf]."""
    if not p >= 1:
        raise GeometryError("p-balls are convex only for p >= 1")
    if math.isinf(p):
        return square()
    t = 2.0 * math.pi * np.arange(n // 2) / n
    c, s = np.cos(t), np.sin(t)
    pts = np.column_stack([np.sign(c) * np.abs(c) ** (2.0 / p),
                           np.sign(s) * np.abs(s) ** (2.0 / p)])
    return cs_hull(pts)


def zonogon(generators) -> CSPolygon:
    """Minkowski sum of the segments [-g, g]."""
    g = np.array(generators, dtype=float)
    # orient generators into the upper half plane and sort by angle
    flip = (g[:, 1] < 0) | ((g[:, 1] == 0) & (g[:, 0] < 0))
    g[flip] *= -1.0
    g = g[np.argsort(np.arctan2(g[:, 1], g[:, 0]))]
    start = -g.sum(axis=0)
    edges = 2.0 * np.vstack([g, -g])
    verts = start + np.vstack([np.zeros(2), np.cumsum(edges, axis=0)[:-1]])
    return validate_cs_polygon(verts)


def normalize_area(P: CSPolygon, target: float = 1.0) -> CSPolygon:
    return scale(P, math.sqrt(target / P.area))


# -- random bodies -----------------------------------------------------------

def random_cs_polygon(rng: np.random.Generator, size: int = 16) -> CSPolygon:
    """Hull of ``size`` Gaussian points and their negatives, unit area."""
    return normalize_area(cs_hull(rng.standard_normal((size, 2))))


def random_cs_hexagon(rng: np.random.Generator) -> CSPolygon:
    """Random centrally symmetric hexagon of unit area."""
    while True:
        P = cs_hull(rng.standard_normal((3, 2)))
        if len(P) == 6:
            return normalize_area(P)


def random_cs_parallelogram(rng: np.random.Generator) -> CSPolygon:
    while True:
        try:
            return normalize_area(cs_hull(rng.standard_normal((2, 2))))
        except GeometryError:
            continue


def random_zonogon(rng: np.random.Generator, k: int) -> CSPolygon:
    return normalize_area(zonogon(rng.standard_normal((k, 2))))


def _symmetric_hull_vertices(points: np.ndarray) -> np.ndarray:
    """Vertices of conv(points, -points), returned in +- pairs."""
    from scipy.spatial import ConvexHull

    n = len(points)
    hull = ConvexHull(np.vstack([points, -points]))
    base = np.unique(hull.vertices % n)
    half = points[base]
    return np.vstack([half, -half])


def random_cs_polytope(rng: np.random.Generator, size: int = 32) -> CSPolytope3:
    """Hull of ``size`` Gaussian points and their negatives, unit volume."""
    v = _symmetric_hull_vertices(rng.standard_normal((size, 3)))
    K = validate_cs_polytope(v)
    return validate_cs_polytope(v / K.volume ** (1.0 / 3.0))


# -- solids ------------------------------------------------------------------

def cube(half_side: float = 1.0) -> CSPolytope3:
    return validate_cs_polytope(half_side * np.array(list(itertools.product([-1.0, 1.0], repeat=3))))


def octahedron(radius: float = 1.0) -> CSPolytope3:
    return validate_cs_polytope(radius * np.vstack([np.eye(3), -np.eye(3)]))


def icosphere_face_centers(subdivisions: int = 2) -> CSPolytope3:
    """Face centres of a subdivided icosahedron, pushed onto the unit sphere.

    Two subdivisions give 320 points.
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [(-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
             (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
             (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1)]
    verts = [np.array(v, float) / np.linalg.norm(v) for v in verts]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
             (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
             (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
             (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    tris = [(verts[a], verts[b], verts[c]) for a, b, c in faces]
    for _ in range(subdivisions):
        nxt = []
        for a, b, c in tris:
            ab, bc, ca = ((a + b), (b + c), (c + a))
            ab, bc, ca = (x / np.linalg.norm(x) for x in (ab, bc, ca))
            nxt += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        tris = nxt
    centers = np.array([a + b + c for a, b, c in tris])
    centers /= np.linalg.norm(centers, axis=1)[:, None]
    # symmetrize exactly: keep one member of each antipodal pair
    key = np.round(centers, 9)
    upper = np.lexsort(key.T[::-1])[len(centers) // 2:]
    half = centers[upper]
    return validate_cs_polytope(np.vstack([half, -half]))


def pball_polytope(p: float, size: int = 400) -> CSPolytope3:
    """Symmetric sample of ``size`` points on the unit p-sphere in 3-space."""
    k = max(size // 2, 4)
    i = np.arange(k) + 0.5
    z = i / k  # upper hemisphere only; the rest is the mirror image
    r = np.sqrt(1.0 - z ** 2)
    t = math.pi * (1.0 + math.sqrt(5.0)) * i
    pts = np.column_stack([r * np.cos(t), r * np.sin(t), z])
    if math.isinf(p):
        pts = pts / np.max(np.abs(pts), axis=1)[:, None]
    else:
        pts = pts / (np.sum(np.abs(pts) ** p, axis=1) ** (1.0 / p))[:, None]
    return validate_cs_polytope(np.vstack([pts, -pts]))


# -- files -------------------------------------------------------------------

def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_document(doc: dict, path=None) -> str:
    text = dumps(doc)
    if path is not None:
        Path(path).write_text(text)
    return text


def _read_vertices(path) -> list:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise GeometryError(f"{path}: missing 'vertices' field")
    return doc["vertices"]


def load_polygon(path, tol: float = 1e-9) -> CSPolygon:
    return validate_cs_polygon(_read_vertices(path), tol=tol)


def load_polytope(path) -> CSPolytope3:
    return validate_cs_polytope(_read_vertices(path))


def gen_body(kind: str, seed: int = 0, size: int = 16) -> dict:
    """Body-file document for a seeded random body."""
    if not 4 <= size <= 4096:
        raise ValueError("size must lie in [4, 4096]")
    rng = np.random.default_rng(seed)
    if kind == "cs_polygon":
        body = random_cs_polygon(rng, size)
    elif kind == "cs_hexagon":
        body = random_cs_hexagon(rng)
    elif kind == "cs_polytope":
        body = random_cs_polytope(rng, size)
    else:
        raise ValueError(f"unknown body kind {kind!r}")
    return {"kind": kind, "seed": seed, "size": size, **body.to_dict()}
