import numpy as np
import pytest
from hypothesis import strategies as st

from hexpack import bodies
from hexpack.planar import cs_hull


def random_body(rng, kind=None):
    """Varied random symmetric polygons: Gaussian hulls and near-circular ones."""
    kind = kind or rng.choice(["gauss", "round", "thin"])
    if kind == "gauss":
        return bodies.random_cs_polygon(rng, int(rng.integers(3, 60)))
    if kind == "round":
        n = int(rng.integers(6, 80))
        t = rng.uniform(0, 2 * np.pi, n)
        r = rng.uniform(0.9, 1.0, n)
        pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
        M = rng.normal(size=(2, 2))
        return bodies.normalize_area(cs_hull(pts @ M.T))
    pts = rng.normal(size=(int(rng.integers(3, 20)), 2)) * [1.0, 0.05]
    return bodies.normalize_area(cs_hull(pts))


@st.composite
def polygons(draw):
    return random_body(np.random.default_rng(draw(st.integers(0, 2**32 - 1))))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def same_lattice(A, B, tol=1e-9):
    """True iff the rows of A and B generate the same planar lattice."""
    T = np.linalg.solve(np.asarray(B).T, np.asarray(A).T)
    return np.allclose(T, np.round(T), atol=tol) and abs(abs(np.linalg.det(np.round(T))) - 1) < 0.5
