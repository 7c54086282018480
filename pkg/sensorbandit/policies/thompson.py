"""
Thompson sampling over truncated-Gamma bin posteriors
"""

from ..asim import asim_select
from ..inference import PriorParams, posterior_arrays, sample_tg_array
from .base import BasePolicy


def ts_sample(stats, mesh, prior, rng):
    """One posterior draw ψ̃_k ~ TG(α + H_k, β + Δ N_k, 0, λ_max) per bin"""
    shape, rate = posterior_arrays(prior, stats, mesh)
    return sample_tg_array(shape, rate, prior.lambda_max, rng)


def ts_step(stats, mesh, prior, rng, C, U):
    """Act optimally for one joint draw from the bin posteriors"""
    return asim_select(ts_sample(stats, mesh, prior, rng), C, U, mesh)


class ThompsonPolicy(BasePolicy):
    """Thompson sampling; the prior is proper so no initialisation round is needed"""

    name = "thompson"

    def __init__(self, cost, sensors=1, prior=None):
        super().__init__(cost, sensors)
        self.prior = prior or PriorParams()

    def rates(self, stats, mesh, t, rng):
        return ts_sample(stats, mesh, self.prior, rng)

    def describe(self):
        info = super().describe()
        info.update(alpha=self.prior.alpha, beta=self.prior.beta, lambda_max=self.prior.lambda_max)
        return info
