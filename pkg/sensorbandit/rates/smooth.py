"""
Closed-form smooth rates used in the simulation study
"""

import math

import numpy as np
from scipy import optimize

from ..exceptions import DomainError
from .base import RateFunction


class UnimodalRate(RateFunction):
    """λ(x) = scale · (x − x²), peaking at x = 0.5 with value scale / 4.

    The default scale 1000/21 together with a sensing cost of 10 makes
    [0.3, 0.7] the optimal single-sensor action.
    """

    name = "unimodal"

    def __init__(self, scale=1000.0 / 21.0):
        if not scale >= 0:
            raise DomainError(f"unimodal scale must be non-negative, got {scale}")
        super().__init__(scale=float(scale))
        self.scale = float(scale)

    def _evaluate(self, x):
        return self.scale * (x - x * x)

    def _antiderivative(self, x):
        return self.scale * (x * x / 2.0 - x ** 3 / 3.0)

    def _closed_form_sup(self):
        return self.scale / 4.0


class BimodalRate(RateFunction):
    """λ(x) = max(floor, amplitude · sin(frequency·x) / (√(frequency·x + 1) + x)).

    With the defaults the rate has two bumps on [0, 1] separated by a
    region pinned at the floor value.
    """

    name = "bimodal"

    def __init__(self, amplitude=15.0, frequency=10.0, floor=0.001):
        if amplitude < 0 or frequency <= 0 or floor < 0:
            raise DomainError(
                f"invalid bimodal parameters amplitude={amplitude}, "
                f"frequency={frequency}, floor={floor}"
            )
        super().__init__(amplitude=float(amplitude), frequency=float(frequency), floor=float(floor))
        self.amplitude = float(amplitude)
        self.frequency = float(frequency)
        self.floor = float(floor)
        self._kinks = self._locate_kinks()

    def _raw(self, x):
        fx = self.frequency * x
        return self.amplitude * np.sin(fx) / (np.sqrt(fx + 1.0) + x)

    def _evaluate(self, x):
        return np.maximum(self.floor, self._raw(x))

    @property
    def kinks(self):
        return self._kinks

    def _locate_kinks(self):
        # one crossing of the floor near each zero of sin(frequency·x)
        gap = lambda x: float(self._raw(np.float64(x))) - self.floor  # noqa: E731
        quarter = math.pi / (2.0 * self.frequency)
        found = []
        for m in range(int(self.frequency / math.pi) + 2):
            centre = m * math.pi / self.frequency
            lo, hi = max(0.0, centre - quarter), min(1.0, centre + quarter)
            if lo >= hi:
                continue
            g_lo, g_hi = gap(lo), gap(hi)
            if g_lo * g_hi < 0:
                found.append(optimize.brentq(gap, lo, hi, xtol=1e-15))
        return tuple(p for p in found if 0.0 < p < 1.0)
