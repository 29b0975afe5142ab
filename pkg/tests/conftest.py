import numpy as np
import pytest

from pulsedem.constants import SimulationConstants
from pulsedem.particle import ParticleSource
from pulsedem.pulse import calibrate_pulse


@pytest.fixture(scope="session")
def constants() -> SimulationConstants:
    return SimulationConstants.natural()


@pytest.fixture(scope="session")
def profile(constants):
    return calibrate_pulse(constants.alpha)


@pytest.fixture(scope="session")
def source(constants, profile) -> ParticleSource:
    return ParticleSource(q0=constants.e, pulse=profile, constants=constants)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(97)
