"""
Piecewise-constant rates
"""

import numpy as np

from ..exceptions import DomainError
from .base import RateFunction


class PiecewiseConstantRate(RateFunction):
    """λ equal to ``values[i]`` on ``[edges[i], edges[i+1])``, last piece closed at 1.

    When ``edges`` is omitted the pieces have equal width.
    """

    name = "piecewise-constant"

    def __init__(self, values, edges=None):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise DomainError("piecewise-constant rate needs at least one value")
        if np.any(~np.isfinite(values)) or np.any(values < 0):
            raise DomainError(f"rate values must be finite and non-negative, got {values.tolist()}")
        if edges is None:
            edges = np.linspace(0.0, 1.0, values.size + 1)
        edges = np.asarray(edges, dtype=float)
        if edges.size != values.size + 1 or edges[0] != 0.0 or edges[-1] != 1.0 or np.any(np.diff(edges) <= 0):
            raise DomainError("edges must increase strictly from 0 to 1 with one more entry than values")
        super().__init__(values=values.tolist(), edges=edges.tolist())
        self.values = values
        self.edges = edges
        self._cumulative = np.concatenate(([0.0], np.cumsum(values * np.diff(edges))))

    def _piece(self, x):
        return np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, self.values.size - 1)

    def _evaluate(self, x):
        return self.values[self._piece(x)]

    def _antiderivative(self, x):
        piece = self._piece(x)
        return self._cumulative[piece] + self.values[piece] * (x - self.edges[piece])

    def _closed_form_sup(self):
        return float(self.values.max())

    @property
    def kinks(self):
        return tuple(float(e) for e in self.edges[1:-1])


class ConstantRate(PiecewiseConstantRate):
    """Homogeneous Poisson process, λ(x) = value"""

    name = "constant"

    def __init__(self, value=1.0):
        super().__init__([value])
        self._params = {"value": float(value)}
        self.value = float(value)
