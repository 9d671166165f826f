import numpy as np
import pytest

from specgrowth.bounds import growth_curve
from specgrowth.monotone import log_uniform_grid
from specgrowth.spectrum import LatticeFamily, resolvent_envelope


@pytest.fixture(scope="session")
def power_model():
    return LatticeFamily(("power", 0.5, 1.0))


@pytest.fixture(scope="session")
def sector_model():
    return LatticeFamily(("power", 1.0, 1.0))


@pytest.fixture(scope="session")
def log_model():
    return LatticeFamily(("log", 1.0), imag_bound_b=2.0)


@pytest.fixture(scope="session")
def power_envelope(power_model):
    return resolvent_envelope(power_model, log_uniform_grid(10.0, 1e8, 16))


@pytest.fixture(scope="session")
def power_curve(power_model):
    t_grid = log_uniform_grid(1e-3, 1e-1, 16)[::-1]
    return growth_curve(power_model, t_grid)


@pytest.fixture(scope="session")
def log_envelope(log_model):
    return resolvent_envelope(log_model, log_uniform_grid(10.0, 1e8, 16))
