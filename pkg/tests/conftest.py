import numpy as np
import pytest

from hyplab.minkowski import (
    HPoint,
    IdealPoint,
    Isometry,
    basepoint,
    rotation_fixing_subspace,
    translation_along,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_ideal_point(rng, dim: int) -> IdealPoint:
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    return IdealPoint(np.concatenate(([1.0], direction)))


def random_hpoint(rng, dim: int, max_dist: float = 3.0) -> HPoint:
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    t = rng.uniform(0.0, max_dist)
    return HPoint(np.concatenate(([np.cosh(t)], np.sinh(t) * direction)))


def random_isometry(rng, dim: int, steps: int = 3) -> Isometry:
    """Product of random translations and coordinate rotations."""
    out = Isometry(np.eye(dim + 1))
    for _ in range(steps):
        xi = random_ideal_point(rng, dim)
        eta = random_ideal_point(rng, dim)
        while np.linalg.norm(xi.spatial - eta.spatial) < 0.5:
            eta = random_ideal_point(rng, dim)
        out = out @ translation_along((xi, eta), float(rng.uniform(0.2, 1.5)))
        if dim >= 2:
            i, k = sorted(rng.choice(np.arange(1, dim + 1), size=2, replace=False))
            out = out @ rotation_fixing_subspace((int(i), int(k)), float(rng.uniform(0, 6.28)), dim)
    return out


@pytest.fixture
def origin3():
    return basepoint(2)
