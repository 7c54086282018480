"""
Epsilon-greedy on empirical bin means
"""

from ..asim import asim_select
from ..binning import Action
from ..exceptions import ConfigError
from ..inference import PriorParams, empirical_mean
from .base import BasePolicy

DEFAULT_EPSILON = 0.01


def epsgreedy_rates(stats, mesh, prior, epsilon, rng):
    """Empirical means, or with probability ε an untruncated Gamma(α, β) prior draw per bin"""
    if rng.random() < epsilon:
        return rng.gamma(prior.alpha, 1.0 / prior.beta, size=mesh.k_count)
    return empirical_mean(stats.H, stats.N, mesh.width)


def epsgreedy_step(stats, mesh, t, prior, epsilon, rng, C, U):
    """Sense [0, 1] in round 1, then act greedily with occasional prior exploration"""
    if t == 1:
        return Action.full()
    return asim_select(epsgreedy_rates(stats, mesh, prior, epsilon, rng), C, U, mesh)


class EpsilonGreedyPolicy(BasePolicy):
    """Greedy policy exploring with probability ``epsilon``"""

    name = "epsgreedy"
    needs_initialisation = True

    def __init__(self, cost, sensors=1, prior=None, epsilon=DEFAULT_EPSILON):
        super().__init__(cost, sensors)
        if not 0.0 <= epsilon <= 1.0:
            raise ConfigError(f"epsilon must lie in [0, 1], got {epsilon}")
        self.prior = prior or PriorParams()
        self.epsilon = float(epsilon)

    def rates(self, stats, mesh, t, rng):
        return epsgreedy_rates(stats, mesh, self.prior, self.epsilon, rng)

    def describe(self):
        info = super().describe()
        info.update(epsilon=self.epsilon, alpha=self.prior.alpha, beta=self.prior.beta)
        return info
