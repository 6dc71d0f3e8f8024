import numpy as np
import pytest

from pdmsoliton.numgrid import make_uniform_grid


def sech(x):
    return 1.0 / np.cosh(x)


@pytest.fixture(scope="session")
def line():
    return make_uniform_grid(-20.0, 20.0, 4001)


@pytest.fixture(scope="session")
def ring():
    return make_uniform_grid(-30.0, 30.0, 1024, "periodic")


@pytest.fixture(scope="session")
def small_ring():
    return make_uniform_grid(-np.pi, np.pi, 256, "periodic")
