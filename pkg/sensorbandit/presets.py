"""
The two experiments of the simulation study
"""

from .config import ExperimentConfig, PolicyConfig, RateSpec
from .exceptions import ConfigError


def unimodal_config(seed=0, replications=10):
    """Rebinning-rate comparison: TS under linear, square-root and cube-root schedules"""
    return ExperimentConfig(
        name='unimodal',
        rate=RateSpec('unimodal'),
        cost=10.0,
        sensors=1,
        horizon=1024,
        initial_bins=4,
        schedule='cuberoot',
        policies=[
            PolicyConfig('thompson', label=f'ts-{schedule}', schedule=schedule)
            for schedule in ('linear', 'sqrt', 'cuberoot')
        ],
        replications=replications,
        seed=seed,
    ).validate()


def bimodal_config(seed=0, replications=10):
    """Policy comparison on the bimodal rate under the cube-root schedule"""
    return ExperimentConfig(
        name='bimodal',
        rate=RateSpec('bimodal'),
        cost=2.0,
        sensors=2,
        horizon=1000,
        initial_bins=16,
        schedule='cuberoot',
        policies=[
            PolicyConfig('thompson', label='ts'),
            PolicyConfig('ucb', label='ucb', lambda_max_factor=1.0),
            PolicyConfig('mucb', label='mucb'),
            PolicyConfig('epsgreedy', label='epsgreedy', epsilon=0.01),
        ],
        replications=replications,
        seed=seed,
    ).validate()


PRESETS = {
    'unimodal': unimodal_config,
    'bimodal': bimodal_config,
}


def preset_config(name, **kwargs):
    """Return the preset experiment called ``name``"""
    try:
        return PRESETS[name](**kwargs)
    except KeyError:
        raise ConfigError(f"unknown experiment {name!r}; expected one of {sorted(PRESETS)}") from None
