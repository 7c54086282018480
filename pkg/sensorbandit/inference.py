"""
Conjugate truncated-Gamma inference for per-bin average rates
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincinv

from .binning import covered_mask
from .exceptions import DomainError, SamplingError, UndefinedStatisticError

logger = logging.getLogger(__name__)

# above this prior mass on [0, λ_max] the truncation is treated as vacuous
VACUOUS_MASS = 1.0 - 1e-12
MAX_REJECTION_PASSES = 1000


@dataclass(frozen=True)
class PriorParams:
    """Truncated Gamma prior TG(alpha, beta, 0, lambda_max); beta is a rate"""

    alpha: float = 0.5
    beta: float = 0.05
    lambda_max: float = math.inf

    def __post_init__(self):
        for name in ('alpha', 'beta', 'lambda_max'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"prior parameter {name} must be strictly positive, got {value}")


@dataclass(frozen=True)
class TGPosterior:
    """Gamma(shape, rate) restricted to [0, upper]"""

    shape: float
    rate: float
    upper: float

    def __post_init__(self):
        if not (self.shape > 0 and self.rate > 0 and self.upper > 0):
            raise DomainError(
                f"truncated Gamma needs positive shape, rate and upper bound, got "
                f"({self.shape}, {self.rate}, {self.upper})"
            )

    @property
    def mass(self):
        """Untruncated Gamma probability of [0, upper]"""
        return float(gammainc(self.shape, self.rate * self.upper))

    def mean(self):
        return float(tg_mean(self.shape, self.rate, self.upper))

    def quantile(self, q):
        return float(tg_quantile(self.shape, self.rate, self.upper, q))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        log_density = (
            self.shape * np.log(self.rate)
            + (self.shape - 1.0) * np.log(np.where(x > 0, x, 1.0))
            - self.rate * x
            - math.lgamma(self.shape)
        )
        density = np.exp(log_density) / self.mass
        inside = (x >= 0) & (x <= self.upper) & ((x > 0) | (self.shape >= 1))
        return np.where(inside, density, 0.0)


def posterior_for_bin(prior, H, N, delta):
    """Return TG(α + H, β + Δ·N, 0, λ_max) for one bin"""
    if H < 0 or N < 0:
        raise DomainError(f"counts must be non-negative, got H={H}, N={N}")
    if not (0.0 < delta <= 1.0):
        raise DomainError(f"bin width must lie in (0, 1], got {delta}")
    return TGPosterior(prior.alpha + H, prior.beta + delta * N, prior.lambda_max)


def posterior_arrays(prior, stats, mesh):
    """Shape and rate arrays of every bin's posterior"""
    shape = prior.alpha + stats.H.astype(float)
    rate = prior.beta + mesh.width * stats.N.astype(float)
    return shape, rate


def tg_mean(shape, rate, upper):
    """Mean of TG(shape, rate, 0, upper); vectorised"""
    shape, rate = np.asarray(shape, dtype=float), np.asarray(rate, dtype=float)
    return shape / rate * gammainc(shape + 1.0, rate * upper) / gammainc(shape, rate * upper)


def tg_quantile(shape, rate, upper, q):
    """Quantile function of TG(shape, rate, 0, upper); vectorised"""
    shape, rate = np.asarray(shape, dtype=float), np.asarray(rate, dtype=float)
    mass = gammainc(shape, rate * upper)
    return np.minimum(gammaincinv(shape, np.asarray(q) * mass) / rate, upper)


def sample_tg_array(shape, rate, upper, rng):
    """
    Draw one value from each TG(shape[i], rate[i], 0, upper).

    Inverse-CDF sampling on the regularized lower incomplete gamma, except
    where the truncation mass exceeds 1 − 1e−12: those entries are drawn
    from the plain Gamma and redrawn while above ``upper``.

    Raises:
        SamplingError: when the truncation mass underflows or a quantile is
            not finite.
    """
    shape = np.atleast_1d(np.asarray(shape, dtype=float))
    rate = np.atleast_1d(np.asarray(rate, dtype=float))
    mass = gammainc(shape, rate * upper)
    if np.any(~(mass > 0)):
        raise SamplingError(
            f"truncated Gamma has no mass on [0, {upper}] for shape/rate "
            f"{list(zip(shape[~(mass > 0)].tolist(), rate[~(mass > 0)].tolist()))[:3]}"
        )

    u = rng.random(shape.size)
    draws = gammaincinv(shape, u * mass) / rate
    vacuous = mass > VACUOUS_MASS
    if np.any(vacuous):
        idx = np.flatnonzero(vacuous)
        logger.debug("truncation vacuous for %d of %d bins; using Gamma rejection", idx.size, shape.size)
        draws[idx] = _gamma_rejection(shape[idx], rate[idx], upper, rng)
    if not np.all(np.isfinite(draws)):
        raise SamplingError("truncated Gamma quantile is not finite")
    # inverse-CDF rounding can land a hair above the truncation point
    return np.minimum(draws, upper)


def _gamma_rejection(shape, rate, upper, rng):
    draws = rng.gamma(shape, 1.0 / rate)
    for _ in range(MAX_REJECTION_PASSES):
        over = np.flatnonzero(draws > upper)
        if over.size == 0:
            return draws
        draws[over] = rng.gamma(shape[over], 1.0 / rate[over])
    raise SamplingError("Gamma rejection sampler did not terminate")


def sample_tg(post, rng):
    """Draw one value from a :class:`TGPosterior`"""
    return float(sample_tg_array(post.shape, post.rate, post.upper, rng)[0])


def empirical_mean(H, N, delta):
    """Return ψ̂ = H / (Δ·N); vectorised over H and N"""
    H, N = np.asarray(H, dtype=float), np.asarray(N, dtype=float)
    if np.any(N < 1):
        raise UndefinedStatisticError("empirical mean is undefined for a bin that was never sensed")
    value = H / (delta * N)
    return float(value) if value.ndim == 0 else value


def confidence_radius(t, N, delta, lambda_max):
    """Return D = 2 log t / (Δ N) + sqrt(6 λ_max log t / (Δ N)); vectorised over N"""
    if t < 1:
        raise DomainError(f"round index must be at least 1, got {t}")
    N = np.asarray(N, dtype=float)
    if np.any(N < 1):
        raise UndefinedStatisticError("confidence radius is undefined for a bin that was never sensed")
    log_t = math.log(t)
    exposure = delta * N
    value = 2.0 * log_t / exposure + np.sqrt(6.0 * lambda_max * log_t / exposure)
    return float(value) if value.ndim == 0 else value


def reward_bounds(action, stats, mesh, t, lambda_max, C):
    """
    Lower and upper confidence bounds on the reward of a bin-aligned action.

    Returns:
        tuple: ``(L, U)`` with L = Δ Σ (ψ̂ − D) − C|A| and U = Δ Σ (ψ̂ + D) − C|A|.
    """
    mask = covered_mask(action, mesh)
    if not mask.any():
        return 0.0, 0.0
    delta = mesh.width
    psi_hat = empirical_mean(stats.H[mask], stats.N[mask], delta)
    radius = confidence_radius(t, stats.N[mask], delta, lambda_max)
    cost = C * action.length
    lower = delta * float(np.sum(psi_hat - radius)) - cost
    upper = delta * float(np.sum(psi_hat + radius)) - cost
    return lower, upper
