"""
Rate function support for sensor-bandit
"""

from ..exceptions import ConfigError
from .base import RateFunction
from .piecewise import ConstantRate, PiecewiseConstantRate
from .smooth import BimodalRate, UnimodalRate

RATES = {
    'unimodal': UnimodalRate,
    'bimodal': BimodalRate,
    'constant': ConstantRate,
    'piecewise-constant': PiecewiseConstantRate,
    'piecewise': PiecewiseConstantRate,
}


def get_rate(name='unimodal'):
    """Get rate class by name"""
    try:
        return RATES[name]
    except KeyError:
        raise ConfigError(f"unknown rate kind {name!r}; expected one of {sorted(RATES)}") from None


def make_rate(kind='unimodal', **params):
    """
    Build a rate function from its kind and keyword parameters.

    Args:
        kind (str): One of ``unimodal``, ``bimodal``, ``constant`` or
            ``piecewise-constant``.
        **params: Keyword arguments of the rate class, e.g. ``scale`` for
            the unimodal rate or ``values``/``edges`` for piecewise rates.

    Returns:
        RateFunction: The constructed rate.

    Example:
        >>> rate = make_rate('unimodal')
        >>> round(rate(0.5), 4)
        11.9048
    """
    cls = get_rate(kind)
    try:
        return cls(**params)
    except TypeError as exc:
        raise ConfigError(f"invalid parameters for {kind!r} rate: {exc}") from exc


__all__ = [
    'RateFunction',
    'UnimodalRate',
    'BimodalRate',
    'ConstantRate',
    'PiecewiseConstantRate',
    'RATES',
    'get_rate',
    'make_rate',
]
