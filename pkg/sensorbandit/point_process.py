"""
Simulation of one round of an inhomogeneous Poisson process on [0, 1]
"""

import logging
from dataclasses import dataclass

import numpy as np

from .binning import Action
from .rates.base import DEFAULT_TOL

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EventBatch:
    """Events detected in one round, sorted, all inside that round's action"""

    round: int
    locations: tuple = ()

    @property
    def count(self):
        return len(self.locations)

    def as_array(self):
        return np.asarray(self.locations, dtype=float)


def eval_rate(rate, x):
    """Return λ(x) for a single point ``x`` in [0, 1]"""
    return float(rate(float(x)))


def integrate_rate(rate, a, b, tol=DEFAULT_TOL):
    """Return ∫_a^b λ(x) dx within absolute error ``tol``"""
    return rate.integrate(float(a), float(b), tol=tol)


def simulate_round(rate, action, rng, round=1):
    """
    Draw the events one round produces inside ``action``.

    Candidate events come from a homogeneous process at ``rate.sup_bound``
    on each sensed interval; a candidate at x survives with probability
    λ(x) / sup_bound.

    Args:
        rate (RateFunction): True intensity.
        action (Action): Sensed intervals.
        rng (numpy.random.Generator): Random stream owned by the caller.
        round (int): Round index recorded on the batch.

    Returns:
        EventBatch: Sorted detected locations.
    """
    if not isinstance(action, Action):
        action = Action(action)
    sup = rate.sup_bound
    if sup <= 0.0 or action.is_empty:
        return EventBatch(round=round)
    kept = []
    for lo, hi in action.intervals:
        n = rng.poisson(sup * (hi - lo))
        if n == 0:
            continue
        x = rng.uniform(lo, hi, size=n)
        accept = rng.random(n) * sup < rate(x)
        kept.append(x[accept])
    if not kept:
        return EventBatch(round=round)
    locations = np.sort(np.concatenate(kept))
    return EventBatch(round=round, locations=tuple(locations.tolist()))


__all__ = ['EventBatch', 'eval_rate', 'integrate_rate', 'simulate_round']
