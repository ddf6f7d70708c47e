import numpy as np
import pytest

from lcqft.spacetime import cylinder, minkowski_plane


@pytest.fixture(scope="session")
def plane32():
    """Massive Minkowski window at h = 1/32, wide enough for global solves."""
    return minkowski_plane(1 / 32, (-1.5, 1.5), (-6.0, 6.0), 1.0)


@pytest.fixture(scope="session")
def plane32_massless():
    return minkowski_plane(1 / 32, (-1.5, 1.5), (-6.0, 6.0), 0.0)


@pytest.fixture(scope="session")
def cyl32():
    return cylinder(1 / 32, 12.0, (-1.5, 1.5), 1.0)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260809)
