"""Planar mixed area, normalized so that (K, K) = |K|.

Two independent routes are provided: the edge/support formula and the
polarization of the Minkowski-sum area. They should agree to rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .planar import CSPolygon, minkowski_sum, support_many

EPS_INEQ = 1e-9


class Method(str, Enum):
    SURFACE_FORMULA = "surface_formula"
    MINKOWSKI_ORACLE = "minkowski_oracle"


@dataclass(frozen=True)
class MixedAreaResult:
    value: float
    method: Method

    def __float__(self):
        return self.value


def mixed_area(K: CSPolygon, L: CSPolygon) -> MixedAreaResult:
    """Half the sum over edges e of L of h_K(outward normal of e) * |e|."""
    e = L.edges
    # rotating an edge clockwise gives its outward normal scaled by |e|
    scaled_normals = np.column_stack([e[:, 1], -e[:, 0]])
    value = 0.5 * float(np.sum(support_many(K, scaled_normals)))
    return MixedAreaResult(value, Method.SURFACE_FORMULA)


def mixed_area_oracle(K: CSPolygon, L: CSPolygon) -> MixedAreaResult:
    """(|K + L| - |K| - |L|) / 2, using only the Minkowski sum and areas."""
    value = 0.5 * (minkowski_sum(K, L).area - K.area - L.area)
    return MixedAreaResult(value, Method.MINKOWSKI_ORACLE)


@dataclass(frozen=True)
class MinkowskiCheck:
    lhs: float
    rhs: float
    passed: bool
    slack: float

    def to_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "pass": self.passed, "slack": self.slack}


def minkowski_inequality_check(K: CSPolygon, L: CSPolygon,
                               eps: float = EPS_INEQ) -> MinkowskiCheck:
    """Compare (K, L)^2 against |K| |L|."""
    lhs = mixed_area(K, L).value ** 2
    rhs = K.area * L.area
    return MinkowskiCheck(lhs, rhs, lhs >= rhs - eps, lhs - rhs)
