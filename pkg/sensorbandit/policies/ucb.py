"""
Optimistic index policies: UCB with a known rate bound and its
empirical-mean variant
"""

import math

import numpy as np

from ..asim import asim_select
from ..binning import Action
from ..exceptions import ConfigError
from ..inference import empirical_mean
from .base import BasePolicy


def _exposure(stats, mesh):
    return mesh.width * stats.N.astype(float)


def ucb_index(stats, mesh, t, lambda_max):
    """ψ̄_k = ψ̂_k + 2 log t / (Δ N_k) + sqrt(6 λ_max log t / (Δ N_k))"""
    psi_hat = empirical_mean(stats.H, stats.N, mesh.width)
    exposure = _exposure(stats, mesh)
    log_t = math.log(t)
    return psi_hat + 2.0 * log_t / exposure + np.sqrt(6.0 * lambda_max * log_t / exposure)


def mucb_index(stats, mesh, t):
    """UCB index with λ_max replaced by the bin's empirical mean"""
    psi_hat = empirical_mean(stats.H, stats.N, mesh.width)
    exposure = _exposure(stats, mesh)
    log_t = math.log(t)
    return psi_hat + 2.0 * log_t / exposure + np.sqrt(6.0 * psi_hat * log_t / exposure)


def ucb_step(stats, mesh, t, lambda_max, C, U):
    """Sense [0, 1] in round 1, then act optimally for the UCB indices"""
    if t == 1:
        return Action.full()
    return asim_select(ucb_index(stats, mesh, t, lambda_max), C, U, mesh)


def mucb_step(stats, mesh, t, C, U):
    """Sense [0, 1] in round 1, then act optimally for the modified indices"""
    if t == 1:
        return Action.full()
    return asim_select(mucb_index(stats, mesh, t), C, U, mesh)


class UCBPolicy(BasePolicy):
    """UCB on histogram bins; needs an upper bound λ_max on the true rate"""

    name = "ucb"
    needs_initialisation = True

    def __init__(self, cost, sensors=1, lambda_max=None):
        super().__init__(cost, sensors)
        if lambda_max is None or not lambda_max > 0:
            raise ConfigError(f"UCB needs a positive lambda_max, got {lambda_max}")
        self.lambda_max = float(lambda_max)

    def rates(self, stats, mesh, t, rng):
        return ucb_index(stats, mesh, t, self.lambda_max)

    def describe(self):
        info = super().describe()
        info['lambda_max'] = self.lambda_max
        return info


class ModifiedUCBPolicy(BasePolicy):
    """UCB with the confidence width driven by each bin's empirical mean"""

    name = "mucb"
    needs_initialisation = True

    def rates(self, stats, mesh, t, rng):
        return mucb_index(stats, mesh, t)
