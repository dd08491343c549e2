"""Mixed-area certificates for hexagons and the resulting 3D density bound.

Two quantities that enter the 3D bound come from a layer construction that is
not reproduced here: the ratio d/h of the longest chord to the layer gap, and
the mixed area of the central section C with the layer hexagon H_K. The
bound uses their conservative floors, d/h = 1 and
(C, H_K) / sqrt(|C| |H_K|) = 1 / sqrt(delta_L(C)); callers holding better
values can pass them to :func:`theorem1_chain`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidInputs
from .lattice import (
    CSHexagon,
    DensityEstimate,
    SearchConfig,
    circumscribed_hexagon,
    min_circumscribed_hexagon,
)
from .mixed import EPS_INEQ, mixed_area
from .planar import CSPolygon, contains, cross2
from .solid import Chord3, CSPolytope3, central_cross_section, longest_chord

TAMMELA_CONSTANT = 0.89265
SMITH_CONSTANT = 0.53835
IDENTITY_RTOL = 1e-8


@dataclass(frozen=True)
class StepRecord:
    """One checked relation ``lhs <relation> rhs``."""

    name: str
    lhs: float
    rhs: float
    relation: str
    tol: float
    passed: bool

    @property
    def slack(self) -> float:
        if self.relation == ">=":
            return self.lhs - self.rhs
        if self.relation == "<=":
            return self.rhs - self.lhs
        return -abs(self.lhs - self.rhs)

    @classmethod
    def check(cls, name, lhs, rhs, relation, tol) -> "StepRecord":
        lhs, rhs = float(lhs), float(rhs)
        if relation == ">=":
            ok = lhs >= rhs - tol
        elif relation == "<=":
            ok = lhs <= rhs + tol
        elif relation == "=":
            ok = abs(lhs - rhs) <= tol
        else:
            raise ValueError(relation)
        return cls(name, lhs, rhs, relation, tol, bool(ok))

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "relation": self.relation, "tol": self.tol,
                "slack": self.slack, "pass": self.passed}


@dataclass(frozen=True, eq=False)
class Lemma1Certificate:
    C: CSPolygon
    H: CSHexagon
    H_prime: CSHexagon
    mixed_CH: float
    mixed_HprimeH: float
    area_C: float
    area_H: float
    area_Hprime: float
    delta_C_lower: float
    lhs: float
    rhs: float
    steps: list = field(default_factory=list)
    passed: bool = False

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "mixed_CH": self.mixed_CH,
            "mixed_HprimeH": self.mixed_HprimeH,
            "area_C": self.area_C,
            "area_H": self.area_H,
            "area_Hprime": self.area_Hprime,
            "delta_C_lower": self.delta_C_lower,
            "C": self.C.to_dict(),
            "H": self.H.to_dict(),
            "H_prime": self.H_prime.to_dict(),
            "steps": [s.to_dict() for s in self.steps],
        }


def _edge_directions_parallel(A: CSPolygon, B: CSPolygon, tol: float = 1e-9) -> bool:
    """Every edge of A is parallel to some edge of B."""
    ea = A.edges / np.linalg.norm(A.edges, axis=1)[:, None]
    eb = B.edges / np.linalg.norm(B.edges, axis=1)[:, None]
    return bool(np.all(np.min(np.abs(cross2(ea[:, None, :], eb[None, :, :])), axis=1) <= tol))


def lemma1_certificate(C: CSPolygon, H: CSHexagon, cfg: SearchConfig | None = None,
                       delta_C: float | None = None,
                       eps: float = EPS_INEQ) -> Lemma1Certificate:
    """Check (C, H) >= sqrt(|C| |H| / delta_L(C)) through its intermediate steps.

    H' is the hexagon circumscribing C with edges parallel to those of H.
    ``delta_C`` overrides the searched lower bound for delta_L(C); a smaller
    value makes the final inequality harder to satisfy.
    """
    if delta_C is None:
        delta_C = min_circumscribed_hexagon(C, cfg).lower_bound
    if not 0 < delta_C <= 1:
        raise InvalidInputs(f"delta lower bound {delta_C} outside (0, 1]")
    Hp = circumscribed_hexagon(C, H.normals)
    mixed_CH = mixed_area(C, H.polygon).value
    mixed_HpH = mixed_area(Hp.polygon, H.polygon).value
    aC, aH, aHp = C.area, H.area, Hp.area
    lhs = mixed_CH
    rhs = math.sqrt(aC * aH / delta_C)

    steps = [
        StepRecord.check("edges of H' parallel to edges of H",
                         float(_edge_directions_parallel(Hp.polygon, H.polygon)), 1.0, "=", 0.0),
        StepRecord.check("C inside H'", float(contains(Hp.polygon, C)), 1.0, "=", 0.0),
        StepRecord.check("(C,H) = (H',H)", mixed_CH, mixed_HpH, "=",
                         IDENTITY_RTOL * max(1.0, abs(mixed_CH))),
        StepRecord.check("(H',H)^2 >= |H'||H|", mixed_HpH ** 2, aHp * aH, ">=", eps),
        StepRecord.check("|C|/|H'| <= delta_L(C)", aC / aHp, delta_C, "<=", eps),
        StepRecord.check("(C,H) >= sqrt(|C||H|/delta_L(C))", lhs, rhs, ">=", eps),
    ]
    return Lemma1Certificate(
        C=C, H=H, H_prime=Hp,
        mixed_CH=mixed_CH, mixed_HprimeH=mixed_HpH,
        area_C=aC, area_H=aH, area_Hprime=aHp,
        delta_C_lower=delta_C, lhs=lhs, rhs=rhs,
        steps=steps, passed=all(s.passed for s in steps),
    )


def universal_constant(tammela: str | float = "0.89265") -> float:
    """1/12 + (delta + 1/2)/3 at the planar constant, in exact rationals."""
    delta = Fraction(str(tammela))
    return float(Fraction(1, 12) + (delta + Fraction(1, 2)) / 3)


def theorem1_chain(delta_C: float, mixed_ratio: float, d_over_h: float = 1.0) -> float:
    """(1/12) d/h + (1/3) (delta + (1/2) sqrt(delta) * mixed_ratio).

    ``mixed_ratio`` is (C, H_K) / (sqrt|C| sqrt|H_K|).
    """
    vals = (delta_C, mixed_ratio, d_over_h)
    if not all(math.isfinite(v) and v > 0 for v in vals):
        raise InvalidInputs(f"chain inputs must be finite and positive: {vals}")
    if d_over_h < 1:
        raise InvalidInputs(f"d/h = {d_over_h} < 1")
    if delta_C > 1:
        raise InvalidInputs(f"delta = {delta_C} > 1")
    return d_over_h / 12.0 + (delta_C + 0.5 * math.sqrt(delta_C) * mixed_ratio) / 3.0


@dataclass(frozen=True, eq=False)
class Bound3Report:
    chord: Chord3
    cross_section: CSPolygon
    density: DensityEstimate
    bound: float
    d_over_h: float
    mixed_ratio: float
    universal_constant: float
    smith_constant: float = SMITH_CONSTANT

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "universal_constant": self.universal_constant,
            "smith_constant": self.smith_constant,
            "pass": self.bound >= self.universal_constant - 1e-3,
            "assumptions": {"d_over_h": self.d_over_h, "mixed_ratio": self.mixed_ratio},
            "chord": self.chord.to_dict(),
            "cross_section": self.cross_section.to_dict(),
            "density": self.density.to_dict(),
        }


def bound3(K: CSPolytope3, cfg: SearchConfig | None = None) -> Bound3Report:
    """Lattice packing density lower bound for K from its central section."""
    chord = longest_chord(K)
    C = central_cross_section(K, chord.direction)
    est = min_circumscribed_hexagon(C, cfg)
    delta = est.lower_bound
    ratio = 1.0 / math.sqrt(delta)
    return Bound3Report(
        chord=chord,
        cross_section=C,
        density=est,
        bound=theorem1_chain(delta, ratio, 1.0),
        d_over_h=1.0,
        mixed_ratio=ratio,
        universal_constant=universal_constant(),
    )


def volume_chain_identity(P_area: float, delta: float, mixed_ratio: float,
                          d_over_h: float, h: float = 1.0,
                          tol: float = 1e-12) -> list[StepRecord]:
    """Rewrite the layer volume bound divided by h|P| into the display form.

    Starts from |K| >= |H_K|(d - h)/3 + (h/3)(|C| + (C,H_K) + |H_K|) with
    |H_K| = |P|/4, |C| = delta |P| and (C,H_K) = mixed_ratio sqrt(|C||H_K|),
    and checks every rewriting step numerically.
    """
    HK = P_area / 4.0
    area_C = delta * P_area
    mixed_CHK = mixed_ratio * math.sqrt(area_C * HK)
    d = d_over_h * h
    scale = h * P_area

    volume = HK * (d - h) / 3.0 + h / 3.0 * (area_C + mixed_CHK + HK)
    display = d_over_h / 12.0 + (delta + 0.5 * math.sqrt(delta) * mixed_ratio) / 3.0
    return [
        StepRecord.check("|H_K|(d-h)/(3h|P|) = (d/h - 1)/12",
                         HK * (d - h) / (3.0 * scale), (d_over_h - 1.0) / 12.0, "=", tol),
        StepRecord.check("h|H_K|/(3h|P|) = 1/12", h * HK / (3.0 * scale), 1.0 / 12.0, "=", tol),
        StepRecord.check("|C|/|P| = delta", area_C / P_area, delta, "=", tol),
        StepRecord.check("(C,H_K)/|P| = sqrt(delta) mixed_ratio / 2",
                         mixed_CHK / P_area, 0.5 * math.sqrt(delta) * mixed_ratio, "=", tol),
        StepRecord.check("volume bound / (h|P|) = display", volume / scale, display, "=", tol),
    ]


def volume_chain_audit(report: Bound3Report, n_random: int = 100, seed: int = 0,
                       tol: float = 1e-12) -> list[StepRecord]:
    """Re-derive the report's bound algebraically at many consistent scales.

    The report fixes delta, mixed_ratio and d/h; |P| and h are free and drawn
    at random (the first instantiation uses |P| = h = 1).
    """
    delta = report.density.lower_bound
    rng = np.random.default_rng(seed)
    scales = [(1.0, 1.0)] + [tuple(10.0 ** rng.uniform(-1, 1, size=2)) for _ in range(n_random)]
    records = []
    for P_area, h in scales:
        records.extend(volume_chain_identity(P_area, delta, report.mixed_ratio,
                                             report.d_over_h, h, tol))
    records.append(StepRecord.check("display = reported bound",
                                    theorem1_chain(delta, report.mixed_ratio, report.d_over_h),
                                    report.bound, "=", tol))
    return records
