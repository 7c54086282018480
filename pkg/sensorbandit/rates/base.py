"""
Base class for intensity functions on the unit interval
"""

import logging

import numpy as np
from scipy import integrate, optimize

from ..exceptions import DomainError

logger = logging.getLogger(__name__)

SUP_GRID_POINTS = 2 ** 16
DEFAULT_TOL = 1e-9
GAUSS_NODES = 16


class RateFunction:
    """Base class for rate function implementations.

    A rate function is the intensity λ of a Poisson process on [0, 1],
    in expected events per unit length per round. Subclasses implement
    :meth:`_evaluate` on numpy arrays and may provide a closed-form
    antiderivative, kink locations and a closed-form supremum.

    Instances are immutable once constructed; internal caches only hold
    values derived from the constructor arguments.
    """

    name = "base"

    def __init__(self, **params):
        self._params = dict(params)
        self._sup = None
        self._bin_cache = {}

    # -- subclass hooks -------------------------------------------------

    def _evaluate(self, x):
        raise NotImplementedError

    def _antiderivative(self, x):
        """Closed-form antiderivative, or None when unavailable"""
        return None

    def _closed_form_sup(self):
        return None

    @property
    def kinks(self):
        """Interior points where λ is not smooth"""
        return ()

    # -- public API -----------------------------------------------------

    @property
    def kind(self):
        return self.name

    @property
    def params(self):
        return dict(self._params)

    @property
    def has_antiderivative(self):
        return self._antiderivative(np.zeros(1)) is not None

    def __call__(self, x):
        """Evaluate λ at ``x`` (scalar or array), rejecting points outside [0, 1]"""
        arr = np.asarray(x, dtype=float)
        if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError(f"rate evaluated outside [0, 1]: {x!r}")
        values = self._evaluate(arr)
        if arr.ndim == 0:
            return float(values)
        return values

    @property
    def sup_bound(self):
        """An upper bound on λ over [0, 1], events per unit length"""
        if self._sup is None:
            closed = self._closed_form_sup()
            self._sup = float(closed) if closed is not None else self._search_sup()
        return self._sup

    def integrate(self, a, b, tol=DEFAULT_TOL):
        """Integral of λ over [a, b] within absolute error ``tol``"""
        if tol <= 0:
            raise DomainError(f"tolerance must be positive, got {tol}")
        if not (0.0 <= a <= b <= 1.0):
            raise DomainError(f"integration bounds must satisfy 0 <= a <= b <= 1, got [{a}, {b}]")
        if a == b:
            return 0.0
        if self.has_antiderivative:
            return float(self._antiderivative(np.float64(b)) - self._antiderivative(np.float64(a)))
        points = [p for p in self.kinks if a < p < b]
        value, _ = integrate.quad(
            self._evaluate, a, b,
            epsabs=tol, epsrel=0.0, limit=200,
            points=points or None,
        )
        return float(value)

    def bin_integrals(self, k_count):
        """Integrals of λ over each bin of the uniform mesh with ``k_count`` bins.

        Uses the antiderivative when one exists, otherwise Gauss-Legendre
        quadrature on every bin after splitting the bins at the kinks.
        """
        k_count = int(k_count)
        if k_count < 1:
            raise DomainError(f"bin count must be positive, got {k_count}")
        cached = self._bin_cache.get(k_count)
        if cached is not None:
            return cached.copy()

        edges = np.arange(k_count + 1, dtype=float) / k_count
        if self.has_antiderivative:
            values = np.diff(self._antiderivative(edges))
        else:
            values = self._gauss_bin_integrals(edges)
        self._bin_cache[k_count] = values
        return values.copy()

    # -- helpers ----------------------------------------------------------

    def _gauss_bin_integrals(self, edges):
        extra = [p for p in self.kinks if 0.0 < p < 1.0]
        cuts = np.union1d(edges, np.asarray(extra, dtype=float))
        nodes, weights = np.polynomial.legendre.leggauss(GAUSS_NODES)
        lo, hi = cuts[:-1], cuts[1:]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = mid[:, None] + half[:, None] * nodes[None, :]
        pieces = half * (self._evaluate(x) @ weights)
        # every original edge is present in ``cuts``; sum sub-pieces back per bin
        starts = np.searchsorted(cuts, edges[:-1])
        return np.add.reduceat(pieces, starts)

    def _search_sup(self):
        grid = np.linspace(0.0, 1.0, SUP_GRID_POINTS + 1)
        values = self._evaluate(grid)
        best = int(np.argmax(values))
        step = 1.0 / SUP_GRID_POINTS
        lo, hi = max(0.0, grid[best] - step), min(1.0, grid[best] + step)
        refined = optimize.minimize_scalar(
            lambda x: -float(self._evaluate(np.float64(x))),
            bounds=(lo, hi), method="bounded", options={"xatol": 1e-12},
        )
        sup = max(float(values[best]), -float(refined.fun))
        logger.debug("sup bound for %s rate found by grid search: %.12g", self.name, sup)
        return sup

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self._params.items())
        return f"{type(self).__name__}({args})"
