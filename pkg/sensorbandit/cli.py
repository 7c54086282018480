"""
Command-line interface: ``sensor-bandit <command> [options]``
"""

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .asim import action_weight, brute_force_select, select_bins
from .binning import Mesh
from .config import load_config
from .exceptions import SensorBanditError
from .harness import run_experiment
from .presets import PRESETS, preset_config
from .traces import emit_traces

logger = logging.getLogger(__name__)

ORACLE_MAX_BINS = 12
ORACLE_MAX_SENSORS = 3
ORACLE_TOL = 1e-12


def _apply_overrides(config, args):
    for name in ('seed', 'replications', 'workers'):
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    if getattr(args, 'out', None):
        config.output = args.out
    return config.validate()


def _run_and_emit(config, args):
    result = run_experiment(config, progress=args.progress)
    written = emit_traces(result, config.output)
    print(json.dumps({'experiment': config.name, 'files': written}))
    return 0


def cmd_run(args):
    config = _apply_overrides(load_config(args.config), args)
    return _run_and_emit(config, args)


def cmd_replicate(args):
    config = _apply_overrides(preset_config(args.experiment), args)
    return _run_and_emit(config, args)


def oracle_check(instances=500, seed=0):
    """
    Compare AS-IM against exhaustive search on random instances.

    Each instance draws K ≤ 12 bin weights uniformly on [−1, 1] and U ≤ 3.

    Returns:
        dict: ``passed``, ``failed`` and the first few failing instances.
    """
    rng = np.random.default_rng(seed)
    passed, failures = 0, []
    for i in range(int(instances)):
        k = int(rng.integers(1, ORACLE_MAX_BINS + 1))
        u = int(rng.integers(1, ORACLE_MAX_SENSORS + 1))
        weights = rng.uniform(-1.0, 1.0, size=k)
        got = select_bins(weights, u).weight
        expected = action_weight(weights, brute_force_select(weights, u), Mesh(k))
        if abs(got - expected) <= ORACLE_TOL:
            passed += 1
        else:
            failures.append({'instance': i, 'U': u, 'weights': weights.tolist(), 'asim': got, 'brute_force': expected})
    if failures:
        logger.warning("AS-IM disagreed with brute force on %d of %d instances", len(failures), instances)
    return {'passed': passed, 'failed': len(failures), 'failures': failures[:5]}


def cmd_oracle_check(args):
    report = oracle_check(args.instances, args.seed)
    print(json.dumps(report))
    return 0 if report['failed'] == 0 else 1


def cmd_describe(args):
    if args.config:
        config = load_config(args.config)
    else:
        config = preset_config(args.experiment)
    print(json.dumps(config.to_dict(), indent=2, sort_keys=True))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog='sensor-bandit',
        description='Adaptive sensor placement on [0, 1] with Thompson sampling and baselines',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Logging level for library messages (default: WARNING)')
    sub = parser.add_subparsers(dest='command', required=True)

    def add_run_options(p):
        p.add_argument('--seed', type=int, default=None, help='Master seed overriding the config')
        p.add_argument('--replications', type=int, default=None, help='Replications per policy')
        p.add_argument('--workers', type=int, default=None, help='Worker processes')
        p.add_argument('--progress', action='store_true', help='Show a progress bar')

    run = sub.add_parser('run', help='Run an experiment from a JSON config file')
    run.add_argument('--config', required=True, help='Path to the experiment JSON')
    run.add_argument('--out', default=None, help='Output directory overriding the config')
    add_run_options(run)
    run.set_defaults(func=cmd_run)

    replicate = sub.add_parser('replicate-paper', help='Run one of the two reference experiments')
    replicate.add_argument('--experiment', required=True, choices=sorted(PRESETS))
    replicate.add_argument('--out', required=True, help='Output directory')
    add_run_options(replicate)
    replicate.set_defaults(func=cmd_replicate)

    oracle = sub.add_parser('oracle-check', help='Check AS-IM against brute force on random instances')
    oracle.add_argument('--instances', type=int, default=500)
    oracle.add_argument('--seed', type=int, default=0)
    oracle.set_defaults(func=cmd_oracle_check)

    describe = sub.add_parser('describe', help='Print the resolved config of a preset or file')
    source = describe.add_mutually_exclusive_group(required=True)
    source.add_argument('--experiment', choices=sorted(PRESETS))
    source.add_argument('--config')
    describe.set_defaults(func=cmd_describe)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    try:
        return args.func(args)
    except (SensorBanditError, OSError) as exc:
        print(json.dumps({'error': type(exc).__name__, 'message': str(exc)}), file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
