"""
Trace output: per-round CSV, summary JSON and posterior snapshots
"""

import json
import logging
import os

import numpy as np
import pandas as pd

from .harness import BoundParams, theorem_bound

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    'run_id', 't', 'K_t', 'action_json', 'reward',
    'inst_regret', 'disc_regret', 'cum_regret',
]
EXTRA_COLUMNS = ['events', 'round_regret']
FLOAT_FORMAT = '%.17g'
INTERVAL_LEVEL = 0.95


def trace_frame(traces):
    """Flatten traces into a DataFrame with one row per (run, round)"""
    records = [
        {
            'run_id': trace.run_id,
            't': row.t,
            'K_t': row.k_count,
            'action_json': json.dumps(row.action),
            'reward': row.reward,
            'inst_regret': row.inst_regret,
            'disc_regret': row.disc_regret,
            'cum_regret': row.cum_regret,
            'events': row.events,
            'round_regret': row.round_regret,
        }
        for trace in traces
        for row in trace.rows
    ]
    return pd.DataFrame.from_records(records, columns=CSV_COLUMNS + EXTRA_COLUMNS)


def read_trace_csv(path):
    """Parse a CSV written by :func:`emit_traces` back into a DataFrame"""
    return pd.read_csv(path, float_precision='round_trip', dtype={'run_id': str})


def summarize(result):
    """
    Per-policy regret summary of an experiment result.

    Reports, for every round, the mean and the empirical 95% interval of
    cumulative regret across replications, the final mean and variance,
    the per-replication comparison with the regret bound, and the number of
    rounds whose discretisation regret exceeds 2CUΔ_t.
    """
    config = result.config
    rate = config.rate.build()
    tail = 100.0 * (1.0 - INTERVAL_LEVEL) / 2.0
    policies = {}
    for arm in config.policies:
        label = config.label_for(arm)
        traces = result.traces[label]
        curves = np.vstack([trace.column('cum_regret') for trace in traces])
        finals = curves[:, -1]
        lambda_max = arm.resolve_lambda_max(rate)
        checks = []
        discretisation_violations = 0
        for trace in traces:
            params = BoundParams.from_k_counts(trace.k_counts(), lambda_max, config.cost, config.sensors)
            bound = theorem_bound(params)
            checks.append({
                'replication': trace.replication,
                'k_lower': params.k_lower,
                'k_upper': params.k_upper,
                'bound': bound,
                'cum_regret': trace.cumulative_regret,
                'within_bound': bool(trace.cumulative_regret <= bound),
            })
            limit = 2.0 * config.cost * config.sensors / trace.k_counts() + 1e-9
            discretisation_violations += int(np.sum(trace.column('disc_regret') > limit))
        policies[label] = {
            'policy': arm.kind,
            'schedule': arm.resolved_schedule(config.schedule),
            'rounds': list(range(1, curves.shape[1] + 1)),
            'mean': curves.mean(axis=0).tolist(),
            'lower': np.percentile(curves, tail, axis=0).tolist(),
            'upper': np.percentile(curves, 100.0 - tail, axis=0).tolist(),
            'final_mean': float(finals.mean()),
            'final_variance': float(finals.var(ddof=1)) if finals.size > 1 else 0.0,
            'final_k': int(traces[0].rows[-1].k_count),
            'rebins': [list(r) for r in traces[0].rebins],
            'bound_checks': checks,
            'discretisation_violations': discretisation_violations,
        }
    return {
        'experiment': config.name,
        'config': config.to_dict(),
        'optimal_action': result.optimal_action.to_list(),
        'optimal_reward': result.optimal_reward,
        'policies': policies,
    }


def _write_json(data, path):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write('\n')


def emit_traces(result, out_dir, name=None):
    """
    Write an experiment's traces to ``out_dir``.

    Files:
        ``<name>.csv``: one row per (run, round) with columns ``run_id, t,
        K_t, action_json, reward, inst_regret, disc_regret, cum_regret``
        followed by ``events, round_regret``; floats carry 17
        significant digits.
        ``<name>_summary.json``: output of :func:`summarize`.
        ``<name>_<label>_posterior.json``: posterior snapshot per policy.

    Returns:
        list: Paths written.
    """
    name = name or result.config.name
    try:
        os.makedirs(out_dir, exist_ok=True)
        written = []
        traces = [t for label in result.traces for t in result.traces[label]]
        csv_path = os.path.join(out_dir, f'{name}.csv')
        write_csv(traces, csv_path)
        written.append(csv_path)

        summary_path = os.path.join(out_dir, f'{name}_summary.json')
        _write_json(summarize(result), summary_path)
        written.append(summary_path)

        for label, snapshot in result.snapshots.items():
            path = os.path.join(out_dir, f'{name}_{label}_posterior.json')
            _write_json(snapshot, path)
            written.append(path)
    except OSError as exc:
        raise OSError(f"cannot write traces to {out_dir}: {exc}") from exc
    logger.info("wrote %d files to %s", len(written), out_dir)
    return written


def write_csv(traces, path):
    """Write traces as CSV; an empty trace list gives a header-only file"""
    trace_frame(traces).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return path
