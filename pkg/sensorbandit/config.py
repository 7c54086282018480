"""
Experiment configuration: dataclasses, JSON loading and validation
"""

import json
import logging
from dataclasses import asdict, dataclass, field, fields

from .binning import SCHEDULE_POWERS, RebinSchedule
from .exceptions import ConfigError
from .inference import PriorParams
from .policies import get_policy, make_policy
from .rates import make_rate

logger = logging.getLogger(__name__)

# λ_max multiplies the rate's sup bound when not given explicitly
DEFAULT_LAMBDA_MAX_FACTOR = {
    'thompson': 10.0,
    'ts': 10.0,
}


def _reject_unknown(cls, data, where):
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown {where} keys: {unknown}")


@dataclass
class RateSpec:
    """Which true intensity to simulate"""

    kind: str = 'unimodal'
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if isinstance(data, str):
            return cls(kind=data)
        _reject_unknown(cls, data, 'rate')
        return cls(**data)

    def build(self):
        return make_rate(self.kind, **self.params)


@dataclass
class PolicyConfig:
    """One arm of an experiment: a policy and, optionally, its own rebin schedule"""

    kind: str = 'thompson'
    label: str = None
    schedule: str = None
    alpha: float = 0.5
    beta: float = None
    lambda_max: float = None
    lambda_max_factor: float = None
    epsilon: float = 0.01

    @classmethod
    def from_dict(cls, data):
        if isinstance(data, str):
            return cls(kind=data)
        _reject_unknown(cls, data, 'policy')
        return cls(**data)

    def validate(self):
        get_policy(self.kind)
        if self.schedule is not None and self.schedule not in SCHEDULE_POWERS:
            raise ConfigError(f"unknown rebin schedule {self.schedule!r} for policy {self.kind!r}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.alpha is not None and not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        return self

    def resolved_schedule(self, default):
        return self.schedule or default

    def resolved_label(self, default_schedule):
        return self.label or f"{self.kind}-{self.resolved_schedule(default_schedule)}"

    def resolve_lambda_max(self, rate):
        if self.lambda_max is not None:
            return float(self.lambda_max)
        factor = self.lambda_max_factor
        if factor is None:
            factor = DEFAULT_LAMBDA_MAX_FACTOR.get(self.kind, 1.0)
        return float(factor) * rate.sup_bound

    def resolve_prior(self, rate, cost):
        beta = self.beta
        if beta is None:
            if not cost > 0:
                raise ConfigError("beta defaults to 0.5 / cost and needs a positive cost; set beta explicitly")
            beta = 0.5 / cost
        return PriorParams(alpha=self.alpha, beta=beta, lambda_max=self.resolve_lambda_max(rate))

    def build(self, rate, cost, sensors):
        """Construct the policy for a given true rate and problem size"""
        cls = get_policy(self.kind)
        if cls.name == 'thompson':
            return make_policy(self.kind, cost, sensors, prior=self.resolve_prior(rate, cost))
        if cls.name == 'ucb':
            return make_policy(self.kind, cost, sensors, lambda_max=self.resolve_lambda_max(rate))
        if cls.name == 'epsgreedy':
            return make_policy(
                self.kind, cost, sensors,
                prior=self.resolve_prior(rate, cost), epsilon=self.epsilon,
            )
        return make_policy(self.kind, cost, sensors)


@dataclass
class ExperimentConfig:
    """
    Complete description of one experiment.

    Every field has a default except the rate; ``policies`` lists the arms
    compared in the experiment, each replicated ``replications`` times with
    streams derived from ``seed``.
    """

    rate: RateSpec = field(default_factory=RateSpec)
    name: str = 'experiment'
    cost: float = 10.0
    sensors: int = 1
    horizon: int = 1024
    initial_bins: int = 4
    schedule: str = 'cuberoot'
    policies: list = field(default_factory=lambda: [PolicyConfig()])
    replications: int = 10
    seed: int = 0
    workers: int = 1
    output: str = 'results'
    snapshot_round: int = None

    @classmethod
    def from_dict(cls, data):
        if 'rate' not in data:
            raise ConfigError("experiment config needs a 'rate' entry")
        _reject_unknown(cls, data, 'experiment')
        values = dict(data)
        values['rate'] = RateSpec.from_dict(values['rate'])
        values['policies'] = [PolicyConfig.from_dict(p) for p in values.get('policies', ['thompson'])]
        try:
            config = cls(**values)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        return config.validate()

    def to_dict(self):
        return asdict(self)

    def validate(self):
        if int(self.horizon) < 1:
            raise ConfigError(f"horizon must be at least 1, got {self.horizon}")
        if not self.cost >= 0:
            raise ConfigError(f"cost must be non-negative, got {self.cost}")
        if int(self.sensors) < 1:
            raise ConfigError(f"need at least one sensor, got {self.sensors}")
        if int(self.replications) < 1:
            raise ConfigError(f"replications must be at least 1, got {self.replications}")
        if int(self.workers) < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if int(self.seed) < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        RebinSchedule(self.schedule, self.initial_bins)
        if not self.policies:
            raise ConfigError("experiment needs at least one policy")
        labels = [p.validate().resolved_label(self.schedule) for p in self.policies]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"policy labels must be unique, got {labels}")
        return self

    def schedule_for(self, policy):
        return RebinSchedule(policy.resolved_schedule(self.schedule), int(self.initial_bins))

    def label_for(self, policy):
        return policy.resolved_label(self.schedule)


def load_config(path):
    """Read an :class:`ExperimentConfig` from a JSON file"""
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top-level JSON value must be an object")
    config = ExperimentConfig.from_dict(data)
    logger.info("loaded experiment %r from %s", config.name, path)
    return config
