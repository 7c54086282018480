"""
Sensor Bandit - Adaptive Sensor Placement on the Unit Interval

A simulator for placing sensors on [0, 1] to observe events of an unknown
inhomogeneous Poisson process. Each round the policy chooses at most U
disjoint intervals, pays a cost C per unit length sensed and observes the
events inside them. Thompson sampling over increasingly granular Bayesian
histograms is compared with UCB-style and ε-greedy baselines.

Features:
    - Truncated Gamma histograms: conjugate per-bin posteriors with exact
      inverse-CDF sampling
    - Rebinning schedules: linear, square-root and cube-root bin growth
    - AS-IM: exact optimal interval selection by iterative merging, with a
      brute-force oracle for small meshes
    - Baselines: UCB, modified UCB and ε-greedy
    - Regret harness: instantaneous, discretisation and cumulative regret,
      the Thompson sampling regret bound and seeded replications
    - Trace output: CSV per experiment plus JSON summaries and posterior
      snapshots for external plotting

Example:
    Run the unimodal experiment and write its traces:

    >>> from sensorbandit import preset_config, run_experiment, emit_traces
    >>>
    >>> config = preset_config('unimodal', seed=7, replications=2)
    >>> result = run_experiment(config)
    >>> emit_traces(result, 'results')

    Select the best action for known bin rates:

    >>> from sensorbandit import Mesh, asim_select
    >>> asim_select([5, 15, 12, 3], C=10, U=1, mesh=Mesh(4))
    Action(intervals=((0.25, 0.75),))

Requirements:
    - Python 3.8+
    - numpy, scipy, pandas, tqdm
"""

__version__ = "1.0.0"
__author__ = "Phil Massyn"
__email__ = "phil.massyn@icloud.com"

from .asim import asim_select, brute_force_select
from .binning import Action, Histogram, Mesh, RebinSchedule
from .config import ExperimentConfig, PolicyConfig, RateSpec, load_config
from .harness import Environment, run_experiment, theorem_bound
from .inference import PriorParams, sample_tg
from .policies import make_policy
from .presets import preset_config
from .rates import make_rate
from .traces import emit_traces

__all__ = [
    'Action',
    'Mesh',
    'Histogram',
    'RebinSchedule',
    'PriorParams',
    'sample_tg',
    'asim_select',
    'brute_force_select',
    'make_rate',
    'make_policy',
    'ExperimentConfig',
    'PolicyConfig',
    'RateSpec',
    'load_config',
    'preset_config',
    'Environment',
    'run_experiment',
    'theorem_bound',
    'emit_traces',
]
