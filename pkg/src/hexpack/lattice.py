"""Lattice packing densities of planar centrally symmetric bodies.

A centrally symmetric hexagon (or parallelogram) tiles the plane by a
lattice, so any such hexagon H circumscribing C gives the packing C + lattice
of density |C| / |H|. The search below minimizes |H| over the three slab
directions that define H; whatever it returns is a valid lower bound for the
lattice packing density of C, even when the optimum is missed.

For a polygon C the minimum is attained with every slab flush against an
edge of C: rotating one slab about the vertex it touches cuts a triangle off
a fixed wedge, and that triangle's area is quasi-convex in the angle, so the
hexagon area is quasi-concave between consecutive edge directions. The
search therefore also tries the edge-normal directions of C.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DegenerateAngles, GeometryError, SearchBudgetExceeded
from .planar import (
    CSPolygon,
    SlabSpec,
    intersection_area,
    slab_activity,
    slab_intersection,
    support,
    support_at_angles,
    unit,
)

log = logging.getLogger(__name__)

NEAR_PARALLEL = 1e-4
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchConfig:
    grid_steps: int = 48
    refine_sweeps: int = 200
    refine_tol: float = 1e-10
    overlap_tol: float = 1e-9
    # enumerate all edge-direction triples when C has at most this many
    exact_max_directions: int = 128
    raise_on_budget: bool = False


@dataclass(frozen=True, eq=False)
class CSHexagon:
    """Centrally symmetric hexagon or parallelogram plus its slab directions."""

    polygon: CSPolygon
    normals: tuple

    def __post_init__(self):
        if len(self.polygon) not in (4, 6):
            raise GeometryError(f"expected 4 or 6 vertices, got {len(self.polygon)}")

    @classmethod
    def from_polygon(cls, P: CSPolygon) -> "CSHexagon":
        return cls(P, tuple(float(a) for a in P.normal_angles))

    @property
    def area(self) -> float:
        return self.polygon.area

    @property
    def is_parallelogram(self) -> bool:
        return len(self.polygon) == 4

    def to_dict(self) -> dict:
        return {"vertices": self.polygon.vertices.tolist(), "normals": list(self.normals)}


@dataclass(frozen=True)
class Lattice2:
    u1: tuple
    u2: tuple
    det: float

    @classmethod
    def from_basis(cls, u1, u2) -> "Lattice2":
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        det = abs(float(u1[0] * u2[1] - u1[1] * u2[0]))
        if not det > 0:
            raise GeometryError("lattice basis is degenerate")
        return cls(tuple(u1.tolist()), tuple(u2.tolist()), det)

    @property
    def basis(self) -> np.ndarray:
        return np.array([self.u1, self.u2])

    def scaled(self, factor: float) -> "Lattice2":
        return Lattice2.from_basis(np.multiply(self.u1, factor), np.multiply(self.u2, factor))

    def points(self, radius: int) -> np.ndarray:
        """Nonzero lattice points with both coefficients in [-radius, radius]."""
        r = np.arange(-radius, radius + 1)
        a, b = np.meshgrid(r, r, indexing="ij")
        coef = np.column_stack([a.ravel(), b.ravel()])
        coef = coef[np.any(coef != 0, axis=1)]
        return coef @ self.basis

    def to_dict(self) -> dict:
        return {"u1": list(self.u1), "u2": list(self.u2), "det": self.det}


@dataclass
class SearchReport:
    grid_steps: int
    refine_iterations: int = 0
    objective_evals: int = 0
    converged: bool = False
    exact_candidates: int = 0
    angles: tuple = ()


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    lower_bound: float
    witness_hexagon: CSHexagon
    lattice: Lattice2
    search_report: SearchReport = field(compare=False)

    def to_dict(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "witness_hexagon": self.witness_hexagon.to_dict(),
            "lattice": self.lattice.to_dict(),
            "search_report": {**asdict(self.search_report),
                              "angles": list(self.search_report.angles)},
        }


# -- objective -------------------------------------------------------------

def _vertex(ta, ha, tb, hb):
    """Intersection of the lines <x, n(ta)> = ha and <x, n(tb)> = hb."""
    det = np.sin(tb - ta)
    x = (ha * np.sin(tb) - hb * np.sin(ta)) / det
    y = (hb * np.cos(ta) - ha * np.cos(tb)) / det
    return x, y


def _parallelogram_area(ta, ha, tb, hb):
    with np.errstate(divide="ignore"):
        return 4.0 * ha * hb / np.abs(np.sin(tb - ta))


def hexagon_area(angles, supports) -> np.ndarray:
    """Area of the intersection of three slabs, vectorized over leading axes.

    ``angles`` and ``supports`` have shape (..., 3): slab normal angles and
    half-widths. Slabs closer than ``NEAR_PARALLEL`` are handled by dropping
    one of the pair (whichever leaves the smaller parallelogram).
    """
    t = np.mod(np.asarray(angles, dtype=float), math.pi)
    h = np.broadcast_to(np.asarray(supports, dtype=float), t.shape)
    order = np.argsort(t, axis=-1)
    t = np.take_along_axis(t, order, axis=-1)
    h = np.take_along_axis(h, order, axis=-1)
    t1, t2, t3 = t[..., 0], t[..., 1], t[..., 2]
    h1, h2, h3 = h[..., 0], h[..., 1], h[..., 2]

    p12 = _parallelogram_area(t1, h1, t2, h2)
    p13 = _parallelogram_area(t1, h1, t3, h3)
    p23 = _parallelogram_area(t2, h2, t3, h3)

    with np.errstate(divide="ignore", invalid="ignore"):
        # six boundary lines in angular order: 1, 2, 3, -1, -2, -3
        q1 = _vertex(t1, h1, t2, h2)
        q2 = _vertex(t2, h2, t3, h3)
        q3 = _vertex(t3, h3, t1 + math.pi, h1)
        hexa = (q1[0] * q2[1] - q1[1] * q2[0]
                + q2[0] * q3[1] - q2[1] * q3[0]
                + q1[0] * q3[1] - q1[1] * q3[0])
        c13 = _vertex(t1, h1, t3, h3)
        c24 = _vertex(t2, h2, t1 + math.pi, h1)
        c62 = _vertex(t3 + math.pi, h3, t2, h2)
        red2 = c13[0] * np.cos(t2) + c13[1] * np.sin(t2) <= h2
        red3 = c24[0] * np.cos(t3) + c24[1] * np.sin(t3) <= h3
        red1 = c62[0] * np.cos(t1) + c62[1] * np.sin(t1) <= h1

    inf = np.inf
    red_area = np.minimum(np.minimum(np.where(red2, p13, inf), np.where(red3, p12, inf)),
                          np.where(red1, p23, inf))
    area = np.where(np.isfinite(red_area), red_area, hexa)

    g12, g23, g31 = t2 - t1, t3 - t2, t1 + math.pi - t3
    near = np.stack([g12, g23, g31]) < NEAR_PARALLEL
    area = np.where(near[0], np.minimum(p13, p23), area)
    area = np.where(near[1], np.minimum(p12, p13), area)
    area = np.where(near[2], np.minimum(p12, p23), area)
    area = np.where(near.sum(axis=0) >= 2, inf, area)
    return area


def edge_length_area(angles, supports) -> np.ndarray:
    """Slab-intersection area summed edge by edge; brute-force oracle route.

    Each boundary line is clipped against the other slabs and contributes
    h_i * (edge length) to twice the area. Redundant lines get length zero.
    """
    t = np.asarray(angles, dtype=float)
    h = np.broadcast_to(np.asarray(supports, dtype=float), t.shape)
    total = np.zeros(t.shape[:-1])
    k = t.shape[-1]
    for i in range(k):
        lo = np.full(t.shape[:-1], -np.inf)
        hi = np.full(t.shape[:-1], np.inf)
        for j in range(k):
            if j == i:
                continue
            s = np.sin(t[..., j] - t[..., i])
            c = np.cos(t[..., j] - t[..., i])
            base = h[..., i] * c
            para = np.abs(s) < 1e-15
            with np.errstate(divide="ignore", invalid="ignore"):
                a = (-h[..., j] - base) / s
                b = (h[..., j] - base) / s
            lo_j = np.where(para, np.where(np.abs(base) <= h[..., j], -np.inf, np.inf),
                            np.minimum(a, b))
            hi_j = np.where(para, np.where(np.abs(base) <= h[..., j], np.inf, -np.inf),
                            np.maximum(a, b))
            lo = np.maximum(lo, lo_j)
            hi = np.minimum(hi, hi_j)
        total = total + h[..., i] * np.maximum(hi - lo, 0.0)
    return total


class _Objective:
    """Circumscribed-hexagon area as a function of the slab angles."""

    def __init__(self, C: CSPolygon):
        self.C = C
        self.evals = 0

    def __call__(self, angles) -> np.ndarray:
        angles = np.asarray(angles, dtype=float)
        self.evals += int(np.prod(angles.shape[:-1])) if angles.ndim > 1 else 1
        return hexagon_area(angles, support_at_angles(self.C, angles))


def golden_section(f, a: float, b: float, tol: float = 1e-10):
    """Minimize a unimodal scalar function on [a, b]. Returns (x, f(x), evals)."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    return (c, fc, evals) if fc < fd else (d, fd, evals)


def _grid_triples(n: int):
    """Index triples i < j < k over range(n), chunked by the first index."""
    for i in range(n - 2):
        j, k = np.triu_indices(n - i - 1, k=1)
        yield np.column_stack([np.full(len(j), i), j + i + 1, k + i + 1])


def _grid_minimum(values_for, n: int):
    """Lexicographically first minimizing triple of a chunked grid."""
    best, best_idx = np.inf, None
    for idx in _grid_triples(n):
        vals = values_for(idx)
        k = int(np.argmin(vals))
        if vals[k] < best:
            best, best_idx = float(vals[k]), tuple(int(x) for x in idx[k])
    return best, best_idx


# -- public operations -----------------------------------------------------

def _circular_gap(a: float, b: float) -> float:
    d = abs(a - b) % math.pi
    return min(d, math.pi - d)


def circumscribed_hexagon(C: CSPolygon, angles: Sequence[float]) -> CSHexagon:
    """Hexagon (or parallelogram) cut out by the support slabs of C.

    Slab normals point along ``angles``; each slab's half-width is the support
    value of C there, so every slab touches C.
    """
    ang = sorted(float(a) % math.pi for a in angles)
    if len(ang) not in (2, 3):
        raise GeometryError("need 2 or 3 slab angles")
    if all(_circular_gap(ang[0], a) < NEAR_PARALLEL for a in ang[1:]):
        raise DegenerateAngles(f"angles {angles} coincide modulo pi")
    if len(ang) == 3:
        near = [(i, j) for i, j in combinations(range(3), 2)
                if _circular_gap(ang[i], ang[j]) < NEAR_PARALLEL]
        if near:
            i, j = near[0]
            options = [[a for k, a in enumerate(ang) if k != drop] for drop in (i, j)]
            return min((circumscribed_hexagon(C, o) for o in options), key=lambda H: H.area)
    slabs = [SlabSpec.from_angle(a, support(C, unit(a))) for a in ang]
    poly = slab_intersection(slabs)
    active = slab_activity(poly, slabs)
    normals = tuple(a for a, on in zip(ang, active) if on)
    return CSHexagon(poly, normals)


def tiling_lattice(H: CSHexagon) -> Lattice2:
    """Lattice whose translates of H tile the plane.

    With canonical vertices v1, v2, v3, ... the basis is v1 + v2, v2 + v3; for
    a parallelogram the same rule yields v1 + v2 and v2 - v1.
    """
    v = H.polygon.vertices
    return Lattice2.from_basis(v[0] + v[1], v[1] + v[2])


def min_circumscribed_hexagon(C: CSPolygon, cfg: SearchConfig | None = None) -> DensityEstimate:
    """Smallest circumscribed centrally symmetric hexagon found by search.

    Stages: a coarse grid over angle triples 0 <= a < b < c < pi, cyclic
    coordinate descent from the best grid point, and (for bodies with few
    edge directions) enumeration of all edge-direction triples.
    """
    cfg = cfg or SearchConfig()
    f = _Objective(C)
    n = cfg.grid_steps
    grid = np.arange(n) * (math.pi / n)
    h_grid = support_at_angles(C, grid)
    f.evals += n
    report = SearchReport(grid_steps=n)

    best, idx = _grid_minimum(lambda ix: hexagon_area(grid[ix], h_grid[ix]), n)
    report.objective_evals += n * (n - 1) * (n - 2) // 6
    theta = np.array([grid[i] for i in idx])
    value = best

    breakpoints = np.unique(C.normal_angles)
    width = math.pi / n
    for sweep in range(cfg.refine_sweeps):
        start = value
        for c in range(3):
            def along(x, c=c):
                trial = theta.copy()
                trial[c] = x
                return float(f(trial))

            x, fx, _ = golden_section(along, theta[c] - width, theta[c] + width,
                                      tol=1e-10)
            trials = np.repeat(theta[None, :], len(breakpoints) + 1, axis=0)
            trials[:-1, c] = breakpoints
            trials[-1, c] = x
            vals = f(trials)
            k = int(np.argmin(vals))
            if vals[k] < value:
                value = float(vals[k])
                theta = trials[k]
        report.refine_iterations = sweep + 1
        if start - value < cfg.refine_tol:
            report.converged = True
            break

    if len(breakpoints) <= cfg.exact_max_directions:
        # every parallelogram and hexagon with edges flush against C
        hb = support_at_angles(C, breakpoints)
        m = len(breakpoints)
        for i, j in combinations(range(m), 2):
            a = float(_parallelogram_area(breakpoints[i], hb[i], breakpoints[j], hb[j]))
            report.exact_candidates += 1
            if a < value:
                value, theta = a, np.array([breakpoints[i], breakpoints[j]])
        if m >= 3:
            ex_best, ex_idx = _grid_minimum(
                lambda ix: hexagon_area(breakpoints[ix], hb[ix]), m)
            report.exact_candidates += m * (m - 1) * (m - 2) // 6
            if ex_best < value:
                value, theta = ex_best, breakpoints[list(ex_idx)]

    report.objective_evals += f.evals
    report.angles = tuple(sorted(float(a) % math.pi for a in theta))
    H = circumscribed_hexagon(C, report.angles)
    estimate = DensityEstimate(
        # a tiling body gives 1 up to rounding
        lower_bound=min(1.0, C.area / H.area),
        witness_hexagon=H,
        lattice=tiling_lattice(H),
        search_report=report,
    )
    if not report.converged:
        log.warning("refinement stopped after %d sweeps without converging",
                    report.refine_iterations)
        if cfg.raise_on_budget:
            raise SearchBudgetExceeded(
                f"no convergence within {cfg.refine_sweeps} sweeps", estimate)
    return estimate


def grid_hexagon_oracle(C: CSPolygon, resolution: int):
    """Exhaustive minimum over angle triples k*pi/resolution, no refinement.

    Areas come from :func:`edge_length_area`, not the optimizer's objective.
    Returns ``(area, angles)``.
    """
    if not 3 <= resolution <= 720:
        raise ValueError("resolution must lie in [3, 720]")
    grid = np.arange(resolution) * (math.pi / resolution)
    h = support_at_angles(C, grid)
    best, idx = _grid_minimum(lambda ix: edge_length_area(grid[ix], h[ix]), resolution)
    return best, tuple(float(grid[i]) for i in idx)


@dataclass(frozen=True)
class PackingCheck:
    valid: bool
    worst_overlap: float
    points_checked: int

    def to_dict(self):
        return {"valid": self.valid, "worst_overlap": self.worst_overlap,
                "points_checked": self.points_checked}


def verify_packing(C: CSPolygon, lat: Lattice2, radius: int = 3,
                   tol: float = 1e-9) -> PackingCheck:
    """Check that C + lattice point never overlaps C for nearby lattice points.

    Points outside the difference body 2C are separated along one of C's edge
    normals and skipped; the rest are clipped exactly.
    """
    if radius < 1:
        raise ValueError("radius must be positive")
    pts = lat.points(radius)
    normals = C.edge_normals[: C.m]
    reach = 2.0 * np.max(C.vertices @ normals.T, axis=0)
    separated = np.any(np.abs(pts @ normals.T) >= reach, axis=1)
    worst = 0.0
    for p in pts[~separated]:
        worst = max(worst, intersection_area(C, C, p))
    return PackingCheck(worst <= tol, worst, len(pts))

