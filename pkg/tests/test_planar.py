import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hexpack import bodies
from hexpack.errors import (
    DegenerateArea,
    NotCentrallySymmetric,
    NotConvex,
    Unbounded,
    ZeroDirection,
)
from hexpack.planar import (
    SlabSpec,
    contains,
    intersection_area,
    minkowski_sum,
    rotate,
    scale,
    slab_activity,
    slab_intersection,
    support,
    transform,
    unit,
    validate_cs_polygon,
)

from conftest import polygons

SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
DIAMOND = [(1, 0), (0, 1), (-1, 0), (0, -1)]
HEXAGON = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]


def test_validate_diamond():
    P = validate_cs_polygon(DIAMOND)
    assert len(P) == 4
    np.testing.assert_allclose(P.vertices[2:], -P.vertices[:2])


def test_validate_rejects_broken_mirror():
    with pytest.raises(NotCentrallySymmetric):
        validate_cs_polygon([(1, 0), (0, 1), (-1, 0), (0, -0.5)])


def test_validate_regular_hexagon():
    assert len(validate_cs_polygon(HEXAGON)) == 6


def test_validate_reorients_and_canonicalizes():
    P = validate_cs_polygon(SQUARE[::-1])
    Q = validate_cs_polygon(SQUARE[2:] + SQUARE[:2])
    np.testing.assert_array_equal(P.vertices, Q.vertices)
    assert P.area > 0
    # canonical start: smallest polar angle
    np.testing.assert_allclose(P.vertices[0], (1, 1))


def test_validate_merges_collinear():
    raw = [(1, 1), (0, 1), (-1, 1), (-1, -1), (0, -1), (1, -1)]
    assert len(validate_cs_polygon(raw)) == 4


def test_validate_errors():
    with pytest.raises(NotConvex):
        validate_cs_polygon([(1, 0), (0.1, 0.1), (0, 1), (-1, 0), (-0.1, -0.1), (0, -1)])
    with pytest.raises(DegenerateArea):
        validate_cs_polygon([(1, 0), (2, 0), (-1, 0), (-2, 0)])


def test_validate_averages_small_asymmetry():
    raw = np.array(SQUARE, float)
    raw[0] += 1e-8
    P = validate_cs_polygon(raw)
    np.testing.assert_array_equal(P.vertices[2:], -P.vertices[:2])


@pytest.mark.parametrize("verts, expected", [
    (SQUARE, 4.0),
    (HEXAGON, 3 * math.sqrt(3) / 2),
    (DIAMOND, 2.0),
])
def test_area(verts, expected):
    assert validate_cs_polygon(verts).area == pytest.approx(expected, rel=1e-12)


def test_support():
    sq, di = validate_cs_polygon(SQUARE), validate_cs_polygon(DIAMOND)
    r = math.sqrt(2) / 2
    assert support(sq, (1, 0)) == pytest.approx(1.0)
    assert support(sq, (r, r)) == pytest.approx(math.sqrt(2))
    assert support(di, (r, r)) == pytest.approx(r)
    with pytest.raises(ZeroDirection):
        support(sq, (0, 0))


@given(polygons(), st.floats(0, 2 * math.pi))
@settings(max_examples=60, deadline=None)
def test_support_even(P, theta):
    u = unit(theta)
    assert support(P, u) == pytest.approx(support(P, -u), abs=1e-12)


@given(polygons(), st.floats(0, 2 * math.pi))
@settings(max_examples=60, deadline=None)
def test_area_rotation_invariant(P, theta):
    assert rotate(P, theta).area == pytest.approx(P.area, rel=1e-9)
    assert transform(P, [[1, 0], [0, -1]]).area == pytest.approx(P.area, rel=1e-9)


def test_minkowski_octagon():
    A = scale(validate_cs_polygon(SQUARE), 0.5)
    B = scale(validate_cs_polygon(DIAMOND), math.sqrt(2) / 2)
    S = minkowski_sum(A, B)
    assert len(S) == 8
    assert S.area == pytest.approx(2 + 2 * math.sqrt(2), rel=1e-12)


def test_minkowski_homothety():
    H = validate_cs_polygon(HEXAGON)
    np.testing.assert_allclose(minkowski_sum(H, H).vertices, 2 * H.vertices, atol=1e-12)
    flipped = transform(H, -np.eye(2))
    np.testing.assert_allclose(minkowski_sum(H, flipped).vertices, 2 * H.vertices, atol=1e-12)


@given(polygons(), polygons())
@settings(max_examples=40, deadline=None)
def test_minkowski_support_identity(P, Q):
    S = minkowski_sum(P, Q)
    for u in np.random.default_rng(0).normal(size=(64, 2)):
        u /= np.linalg.norm(u)
        assert support(S, u) == pytest.approx(support(P, u) + support(Q, u), abs=1e-9)


def test_slab_square():
    P = slab_intersection([SlabSpec.from_angle(0, 1), SlabSpec.from_angle(math.pi / 2, 1)])
    np.testing.assert_allclose(P.vertices, [(1, 1), (-1, 1), (-1, -1), (1, -1)], atol=1e-12)


def test_slab_regular_hexagon():
    slabs = [SlabSpec.from_angle(a, 1) for a in (0, math.pi / 3, 2 * math.pi / 3)]
    P = slab_intersection(slabs)
    assert len(P) == 6
    assert P.area == pytest.approx(2 * math.sqrt(3), rel=1e-12)
    assert slab_activity(P, slabs) == [True, True, True]


def test_slab_redundant():
    slabs = [SlabSpec.from_angle(math.radians(a), w) for a, w in ((0, 1), (1, 1.2), (90, 1))]
    P = slab_intersection(slabs)
    assert len(P) == 4
    assert slab_activity(P, slabs) == [True, False, True]
    assert P.area == pytest.approx(4.0)


def test_slab_unbounded():
    with pytest.raises(Unbounded):
        slab_intersection([SlabSpec.from_angle(0.3, 1), SlabSpec.from_angle(0.3, 2)])


@given(polygons())
@settings(max_examples=40, deadline=None)
def test_slab_roundtrip_contains(P):
    normals = P.edge_normals[: P.m]
    idx = np.random.default_rng(len(P)).choice(P.m, size=min(3, P.m), replace=False)
    slabs = [SlabSpec(tuple(normals[i]), support(P, normals[i])) for i in idx]
    H = slab_intersection(slabs)
    assert contains(H, P)


def test_contains():
    sq, di = validate_cs_polygon(SQUARE), validate_cs_polygon(DIAMOND)
    assert contains(sq, di)
    assert not contains(di, sq)


@pytest.mark.parametrize("offset, expected", [((0, 0), 4.0), ((2, 0), 0.0), ((1, 0), 2.0)])
def test_intersection_area_squares(offset, expected):
    sq = validate_cs_polygon(SQUARE)
    assert intersection_area(sq, sq, offset) == pytest.approx(expected, abs=1e-12)


@given(polygons(), polygons(), st.floats(-2, 2), st.floats(-2, 2))
@settings(max_examples=60, deadline=None)
def test_intersection_area_symmetric(P, Q, x, y):
    a = intersection_area(P, Q, (x, y))
    b = intersection_area(Q, P, (-x, -y))
    assert a == pytest.approx(b, abs=1e-9)
    assert a <= min(P.area, Q.area) + 1e-9


def test_body_families_validate():
    for P in (bodies.square(), bodies.regular_octagon(), bodies.disk_polygon(512),
              bodies.pball_polygon(1.0), bodies.pball_polygon(3.0), bodies.zonogon([(1, 0), (0, 1), (1, 1)])):
        validate_cs_polygon(P.vertices, sym_tol=1e-12)
    assert len(bodies.pball_polygon(1.0)) == 4
    assert len(bodies.zonogon([(1, 0), (0, 1), (1, 1)])) == 6
