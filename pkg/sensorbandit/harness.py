"""
Experiment orchestration: rewards, optimal actions, regret accounting and
the replication runner
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from tqdm import tqdm

from .asim import select_bins
from .binning import Action, Histogram, Mesh, covered_mask
from .exceptions import ConfigError
from .inference import posterior_arrays, tg_mean, tg_quantile
from .point_process import simulate_round
from .rates.base import DEFAULT_TOL

logger = logging.getLogger(__name__)

REFERENCE_BINS = 2 ** 16
CREDIBLE_LEVEL = 0.95


def expected_reward(action, rate, C, tol=DEFAULT_TOL):
    """r(A) = ∫_A (λ(x) − C) dx"""
    return float(sum(rate.integrate(lo, hi, tol=tol) - C * (hi - lo) for lo, hi in action.intervals))


def _mesh_weights(rate, C, k_count):
    return rate.bin_integrals(k_count) - C / k_count


def optimal_discrete_action(rate, C, U, mesh):
    """Best action made of whole bins of ``mesh``, for the exact bin-average rates"""
    selection = select_bins(_mesh_weights(rate, C, mesh.k_count), U)
    return Action.from_mask(selection.mask, mesh)


def reference_bins(k0=1):
    """Smallest k0·2^m that is at least 2^16, so the reference mesh refines every schedule mesh"""
    k0 = int(k0)
    return k0 * 2 ** max(0, math.ceil(math.log2(REFERENCE_BINS / k0)))


def optimal_continuous_action(rate, C, U, k_count=REFERENCE_BINS):
    """
    Approximate A* = argmax r(A) over unions of at most U intervals.

    Solved exactly on a mesh of ``k_count`` bins; the reward of the result
    is within 2CU/k_count of the continuous optimum.
    """
    return optimal_discrete_action(rate, C, U, Mesh(k_count))


class Environment:
    """
    True rate plus cached per-mesh optima for regret accounting.

    Rewards of bin-aligned actions are sums of exact bin weights of the
    mesh they are aligned to, so the regret decomposition holds up to
    rounding.
    """

    def __init__(self, rate, cost, sensors, reference_k=REFERENCE_BINS):
        self.rate = rate
        self.cost = float(cost)
        self.sensors = int(sensors)
        self._cache = {}
        self.reference_mesh = Mesh(reference_k)
        self.optimal_action, self.optimal_reward = self.discrete_optimum(self.reference_mesh)

    @classmethod
    def from_config(cls, config):
        return cls(
            config.rate.build(), config.cost, config.sensors,
            reference_k=reference_bins(config.initial_bins),
        )

    def _entry(self, mesh):
        entry = self._cache.get(mesh.k_count)
        if entry is None:
            weights = _mesh_weights(self.rate, self.cost, mesh.k_count)
            selection = select_bins(weights, self.sensors)
            entry = (weights, Action.from_mask(selection.mask, mesh), selection.weight)
            self._cache[mesh.k_count] = entry
        return entry

    def bin_rates(self, mesh):
        """ψ_k = K ∫_{B_k} λ for every bin"""
        return self.rate.bin_integrals(mesh.k_count) * mesh.k_count

    def discrete_optimum(self, mesh):
        """``(A*_t, r(A*_t))`` for the mesh"""
        _, action, reward = self._entry(mesh)
        return action, reward

    def reward(self, action, mesh):
        """r(A) for an action aligned to ``mesh``"""
        weights = self._entry(mesh)[0]
        return float(weights[covered_mask(action, mesh)].sum())


@dataclass
class RoundRow:
    """Regret quantities of one round"""

    t: int
    k_count: int
    action: list
    events: int
    reward: float
    inst_regret: float
    disc_regret: float
    round_regret: float
    cum_regret: float


@dataclass
class RegretTrace:
    """Per-round record of one replication of one policy"""

    label: str
    replication: int
    rows: list = field(default_factory=list)
    rebins: list = field(default_factory=list)

    @property
    def run_id(self):
        return f"{self.label}/{self.replication}"

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows])

    @property
    def cumulative_regret(self):
        return self.rows[-1].cum_regret if self.rows else 0.0

    def k_counts(self):
        return self.column('k_count')


@dataclass(frozen=True)
class BoundParams:
    """Constants of the Bayesian regret bound for a cube-root-like mesh growth"""

    k_lower: float
    k_upper: float
    lambda_max: float
    cost: float
    sensors: int
    horizon: int

    @classmethod
    def from_k_counts(cls, k_counts, lambda_max, cost, sensors):
        """Empirical K̲ = min K_t / t^(1/3) and K̄ = max K_t / t^(1/3) over a run"""
        k_counts = np.asarray(k_counts, dtype=float)
        t = np.arange(1, k_counts.size + 1, dtype=float)
        ratios = k_counts / np.cbrt(t)
        return cls(float(ratios.min()), float(ratios.max()), float(lambda_max), float(cost), int(sensors), int(k_counts.size))


def theorem_bound(params):
    """
    Upper bound on the Bayesian regret of Thompson sampling after T rounds:

        4 K̄ (log(T+1) log T + 2 λ_max) T^(1/3)
        + (C U / K̲ + sqrt(24 K̄ λ_max log T)) T^(2/3)
    """
    T = params.horizon
    log_t = math.log(T)
    first = 4.0 * params.k_upper * (math.log(T + 1) * log_t + 2.0 * params.lambda_max) * T ** (1.0 / 3.0)
    second = (
        params.cost * params.sensors / params.k_lower
        + math.sqrt(24.0 * params.k_upper * params.lambda_max * log_t)
    ) * T ** (2.0 / 3.0)
    return first + second


def replication_streams(seed, replication):
    """Independent policy and environment generators for one replication"""
    root = np.random.SeedSequence(int(seed), spawn_key=(int(replication),))
    policy_seq, env_seq = root.spawn(2)
    return (
        np.random.Generator(np.random.Philox(policy_seq)),
        np.random.Generator(np.random.Philox(env_seq)),
    )


def posterior_snapshot(histogram, prior, environment, policy, action, t):
    """Per-bin posterior summary of one round, for external plotting"""
    mesh, stats = histogram.mesh, histogram.stats
    shape, rate = posterior_arrays(prior, stats, mesh)
    tail = (1.0 - CREDIBLE_LEVEL) / 2.0
    last = policy.last_rates
    return {
        'round': int(t),
        'k_count': mesh.k_count,
        'edges': mesh.edges().tolist(),
        'true_rates': environment.bin_rates(mesh).tolist(),
        'cost': environment.cost,
        'H': stats.H.tolist(),
        'N': stats.N.tolist(),
        'shape': shape.tolist(),
        'rate': rate.tolist(),
        'mean': tg_mean(shape, rate, prior.lambda_max).tolist(),
        'lower': tg_quantile(shape, rate, prior.lambda_max, tail).tolist(),
        'upper': tg_quantile(shape, rate, prior.lambda_max, 1.0 - tail).tolist(),
        'sampled_rates': None if last is None else np.asarray(last, dtype=float).tolist(),
        'action': action.to_list(),
        'optimal_action': environment.optimal_action.to_list(),
    }


def run_replication(config, arm_index, replication, environment=None):
    """
    Run one replication of one policy of an experiment.

    Returns:
        tuple: ``(RegretTrace, snapshot)``; the snapshot is a dict for
        replication 0 and None otherwise.
    """
    env = environment or Environment.from_config(config)
    arm = config.policies[arm_index]
    label = config.label_for(arm)
    policy = arm.build(env.rate, config.cost, config.sensors)
    histogram = Histogram(config.schedule_for(arm))
    policy_rng, env_rng = replication_streams(config.seed, replication)
    snapshot_round = config.snapshot_round or config.horizon
    try:
        display_prior = arm.resolve_prior(env.rate, config.cost)
    except ConfigError:
        display_prior = None

    trace = RegretTrace(label=label, replication=replication)
    snapshot = None
    cumulative = 0.0
    logger.info("replication %d of %s started", replication, label)
    for t in range(1, config.horizon + 1):
        mesh = histogram.mesh
        action = policy.select(histogram.stats, mesh, t, policy_rng).validate(config.sensors)
        batch = simulate_round(env.rate, action, env_rng, round=t)
        histogram.record(t, action, batch.locations)

        reward = env.reward(action, mesh)
        _, best_reward = env.discrete_optimum(mesh)
        inst = env.optimal_reward - reward
        cumulative += inst
        trace.rows.append(RoundRow(
            t=t,
            k_count=mesh.k_count,
            action=action.to_list(),
            events=batch.count,
            reward=reward,
            inst_regret=inst,
            disc_regret=env.optimal_reward - best_reward,
            round_regret=best_reward - reward,
            cum_regret=cumulative,
        ))
        if replication == 0 and t == snapshot_round and display_prior is not None:
            snapshot = posterior_snapshot(histogram, display_prior, env, policy, action, t)
        histogram.end_round(t)

    trace.rebins = list(histogram.rebins)
    logger.info("replication %d of %s finished, cumulative regret %.4f", replication, label, cumulative)
    return trace, snapshot


def _run_task(task):
    config, arm_index, replication = task
    return run_replication(config, arm_index, replication)


@dataclass
class ExperimentResult:
    """Traces of every (policy, replication) pair of an experiment"""

    config: object
    traces: dict
    snapshots: dict
    optimal_action: Action
    optimal_reward: float

    def labels(self):
        return list(self.traces)


def run_experiment(config, progress=False, workers=None):
    """
    Run every policy of ``config`` for ``config.replications`` replications.

    Replications are independent and deterministic given the seed; with
    more than one worker they run in separate processes and are merged
    back in replication order.
    """
    config.validate()
    workers = int(workers or config.workers)
    env = Environment.from_config(config)
    tasks = [
        (config, arm_index, replication)
        for arm_index in range(len(config.policies))
        for replication in range(int(config.replications))
    ]
    logger.info("experiment %r: %d tasks on %d worker(s)", config.name, len(tasks), workers)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(tqdm(pool.map(_run_task, tasks), total=len(tasks), disable=not progress))
    else:
        outputs = [
            run_replication(cfg, arm_index, replication, environment=env)
            for cfg, arm_index, replication in tqdm(tasks, disable=not progress)
        ]

    traces = {config.label_for(arm): [] for arm in config.policies}
    snapshots = {}
    for trace, snapshot in outputs:
        traces[trace.label].append(trace)
        if snapshot is not None:
            snapshots[trace.label] = snapshot
    return ExperimentResult(
        config=config,
        traces=traces,
        snapshots=snapshots,
        optimal_action=env.optimal_action,
        optimal_reward=env.optimal_reward,
    )
