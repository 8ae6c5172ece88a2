import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from spectral_core import HermitianOperator, SpectralInterval, StateVector

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture
def interval12():
    return SpectralInterval(1.0, 2.0)


@pytest.fixture
def diag12(interval12):
    return HermitianOperator.diagonal([1.0, 2.0], interval12)


@pytest.fixture
def equal_state():
    return StateVector.unit([1.0, 1.0])


@pytest.fixture
def e1():
    return StateVector.basis(2, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
