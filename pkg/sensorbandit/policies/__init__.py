"""
Decision policies for sensor-bandit
"""

from ..exceptions import ConfigError
from .base import BasePolicy
from .greedy import EpsilonGreedyPolicy, epsgreedy_step
from .thompson import ThompsonPolicy, ts_step
from .ucb import ModifiedUCBPolicy, UCBPolicy, mucb_index, mucb_step, ucb_index, ucb_step

POLICIES = {
    'thompson': ThompsonPolicy,
    'ts': ThompsonPolicy,
    'ucb': UCBPolicy,
    'mucb': ModifiedUCBPolicy,
    'epsgreedy': EpsilonGreedyPolicy,
    'epsilon-greedy': EpsilonGreedyPolicy,
}


def get_policy(name='thompson'):
    """Get policy class by name"""
    try:
        return POLICIES[name]
    except KeyError:
        raise ConfigError(f"unknown policy kind {name!r}; expected one of {sorted(POLICIES)}") from None


def make_policy(kind='thompson', cost=1.0, sensors=1, **params):
    """
    Build a policy from its kind and keyword parameters.

    Args:
        kind (str): ``thompson``, ``ucb``, ``mucb`` or ``epsgreedy``.
        cost (float): Sensing cost per unit length.
        sensors (int): Maximal number of intervals per action.
        **params: Policy options:

            prior (PriorParams): thompson and epsgreedy.
            lambda_max (float): ucb.
            epsilon (float): epsgreedy, defaults to 0.01.

    Returns:
        BasePolicy: The configured policy.

    Example:
        >>> from sensorbandit.inference import PriorParams
        >>> policy = make_policy('thompson', cost=10, sensors=1,
        ...                      prior=PriorParams(0.5, 0.05, 119.0))
    """
    cls = get_policy(kind)
    try:
        return cls(cost, sensors, **params)
    except TypeError as exc:
        raise ConfigError(f"invalid parameters for {kind!r} policy: {exc}") from exc


__all__ = [
    'BasePolicy',
    'ThompsonPolicy',
    'UCBPolicy',
    'ModifiedUCBPolicy',
    'EpsilonGreedyPolicy',
    'POLICIES',
    'get_policy',
    'make_policy',
    'ts_step',
    'ucb_step',
    'mucb_step',
    'epsgreedy_step',
    'ucb_index',
    'mucb_index',
]
