"""
Base class for decision policies
"""

from ..asim import asim_select
from ..binning import Action
from ..exceptions import ConfigError


class BasePolicy:
    """Base class for policies mapping per-bin statistics to an action.

    Subclasses compute a per-bin rate vector in :meth:`rates`; the action
    is the AS-IM optimum for those rates. Policies that need every bin to
    have been sensed once sense the whole interval in round 1.
    """

    name = "base"
    needs_initialisation = False

    def __init__(self, cost, sensors=1):
        if cost < 0:
            raise ConfigError(f"sensing cost must be non-negative, got {cost}")
        if int(sensors) < 1:
            raise ConfigError(f"need at least one sensor, got {sensors}")
        self.cost = float(cost)
        self.sensors = int(sensors)
        self.last_rates = None

    def rates(self, stats, mesh, t, rng):
        """Per-bin rates the action is optimised against"""
        raise NotImplementedError

    def select(self, stats, mesh, t, rng):
        """Return the action for round ``t``"""
        if self.needs_initialisation and t == 1:
            self.last_rates = None
            return Action.full()
        self.last_rates = self.rates(stats, mesh, t, rng)
        return asim_select(self.last_rates, self.cost, self.sensors, mesh)

    def describe(self):
        """Parameters identifying this policy, for summaries"""
        return {'kind': self.name, 'cost': self.cost, 'sensors': self.sensors}

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.describe().items() if k != 'kind')
        return f"{type(self).__name__}({args})"
