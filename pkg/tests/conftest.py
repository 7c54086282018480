import numpy as np
import pytest

from sensorbandit.config import ExperimentConfig, PolicyConfig, RateSpec
from sensorbandit.rates import BimodalRate, ConstantRate, UnimodalRate


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def unimodal():
    return UnimodalRate()


@pytest.fixture
def bimodal():
    return BimodalRate()


@pytest.fixture
def constant_five():
    return ConstantRate(5.0)


@pytest.fixture
def small_config():
    """Factory for short experiments that finish in well under a second"""

    def build(**overrides):
        values = dict(
            name='small',
            rate=RateSpec('unimodal'),
            cost=10.0,
            sensors=1,
            horizon=40,
            initial_bins=4,
            schedule='cuberoot',
            policies=[PolicyConfig('thompson', label='ts')],
            replications=2,
            seed=3,
        )
        values.update(overrides)
        return ExperimentConfig(**values).validate()

    return build
