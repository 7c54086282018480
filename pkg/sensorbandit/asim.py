"""
Action selection by iterative merging (AS-IM) and a brute-force oracle

Given a piecewise-constant rate on a uniform mesh, the reward of an action
is the sum of the weights w(B) = Δ·(ψ_B − C) of the bins it covers. AS-IM
returns the union of at most U disjoint bin-aligned intervals with maximal
total weight.
"""

import heapq
import logging
import math
from dataclasses import dataclass

import numpy as np

from .binning import Action, Mesh, covered_mask
from .exceptions import DomainError, SizeGuardError

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_BINS = 20


@dataclass(frozen=True)
class WeightedInterval:
    """Run of bins ``lo_bin..hi_bin`` (1-based, inclusive) with total weight"""

    lo_bin: int
    hi_bin: int
    weight: float
    positive: bool = True


@dataclass
class Selection:
    """Outcome of one AS-IM call"""

    mask: np.ndarray
    weight: float
    merges: int
    initial_intervals: int


def bin_weights_for(bin_rates, C, mesh):
    """Per-bin weights Δ·(ψ_k − C)"""
    rates = np.asarray(bin_rates, dtype=float)
    if rates.size != mesh.k_count:
        raise DomainError(f"{rates.size} rates given for a mesh of {mesh.k_count} bins")
    return mesh.width * (rates - C)


def _run_signs(weights):
    # zero-weight bins take the sign of the run before them; a leading zero is positive
    sign = np.sign(weights)
    idx = np.where(sign != 0, np.arange(sign.size), 0)
    np.maximum.accumulate(idx, out=idx)
    filled = sign[idx]
    filled[filled == 0] = 1
    return filled > 0


def _runs(weights):
    # 0-based start, exclusive stop, total weight and sign of every maximal run
    positive = _run_signs(weights)
    starts = np.concatenate(([0], np.flatnonzero(positive[1:] != positive[:-1]) + 1))
    stops = np.concatenate((starts[1:], [weights.size]))
    return starts, stops, np.add.reduceat(weights, starts), positive[starts]


def build_initial_intervals(bin_weights, mesh=None):
    """
    Group maximal runs of same-signed bins into weighted intervals.

    Adjacent intervals in the result have opposite signs.
    """
    weights = np.asarray(bin_weights, dtype=float)
    if weights.size == 0:
        raise DomainError("cannot build intervals from an empty weight list")
    if mesh is not None and weights.size != mesh.k_count:
        raise DomainError(f"{weights.size} weights given for a mesh of {mesh.k_count} bins")
    starts, stops, sums, signs = _runs(weights)
    return [
        WeightedInterval(int(s) + 1, int(e), float(w), bool(p))
        for s, e, w, p in zip(starts, stops, sums, signs)
    ]


def select_bins(bin_weights, U):
    """
    Run AS-IM on per-bin weights and return the selected bins.

    The working list is bracketed by two sentinel intervals of weight −∞,
    so a positive end interval competes for merging like any interior one:
    merging it into a sentinel discards it together with its negative
    neighbour. Leading and trailing negative intervals are absorbed by the
    sentinels before the loop. Every merge removes exactly one positive
    interval; the loop stops once at most U remain.
    """
    if U < 1:
        raise DomainError(f"need at least one sensor, got U={U}")
    weights = np.asarray(bin_weights, dtype=float)
    if weights.size == 0:
        raise DomainError("cannot build intervals from an empty weight list")
    starts, stops, sums, signs = _runs(weights)
    keep = np.flatnonzero(signs)
    if keep.size:
        keep = slice(keep[0], keep[-1] + 1)
        starts, stops, sums, signs = starts[keep], stops[keep], sums[keep], signs[keep]
    else:
        starts = stops = sums = signs = starts[:0]
    n_runs = int(starts.size)

    # node 0 and node n+1 are the sentinels
    count = n_runs + 2
    edge = weights.size + 1
    lo = np.concatenate(([0], starts + 1, [edge])).tolist()
    hi = np.concatenate(([0], stops, [edge])).tolist()
    w = np.concatenate(([-math.inf], sums, [-math.inf])).tolist()
    positive = np.concatenate(([False], signs, [False])).astype(bool).tolist()
    sentinel = [True] + [False] * n_runs + [True]
    prev = list(range(-1, count - 1))
    nxt = list(range(1, count + 1))
    nxt[-1] = -1
    alive = [True] * count
    version = [0] * count

    heap = list(zip(np.abs(sums).tolist(), lo[1:-1], range(1, count - 1), [0] * n_runs))
    heapq.heapify(heap)
    n_positive = sum(positive)
    merges = 0

    while n_positive > U and heap:
        _, _, n, ver = heapq.heappop(heap)
        if not alive[n] or ver != version[n]:
            continue
        p, q = prev[n], nxt[n]
        # n absorbs both neighbours
        lo[n], hi[n] = lo[p], hi[q]
        w[n] = w[p] + w[n] + w[q]
        positive[n] = positive[p]
        sentinel[n] = sentinel[p] or sentinel[q]
        alive[p] = alive[q] = False
        prev[n], nxt[n] = prev[p], nxt[q]
        if prev[n] >= 0:
            nxt[prev[n]] = n
        if nxt[n] >= 0:
            prev[nxt[n]] = n
        version[n] += 1
        if sentinel[n]:
            w[n] = -math.inf
            positive[n] = False
        else:
            heapq.heappush(heap, (abs(w[n]), lo[n], n, version[n]))
        n_positive -= 1
        merges += 1

    chosen = [
        n for n in range(count)
        if alive[n] and not sentinel[n] and positive[n] and w[n] > 0
    ]
    if len(chosen) > U:
        # no merge candidate left: keep the U heaviest, smaller index first on ties
        chosen = sorted(sorted(chosen, key=lambda n: (-w[n], lo[n]))[:U])

    mask = np.zeros(weights.size, dtype=bool)
    for n in chosen:
        mask[lo[n] - 1:hi[n]] = True
    return Selection(
        mask=mask,
        weight=float(weights[mask].sum()),
        merges=merges,
        initial_intervals=n_runs,
    )


def asim_select(bin_rates, C, U, mesh):
    """
    Optimal action for a piecewise-constant rate.

    Args:
        bin_rates (array-like): Rate ψ_k of each bin of ``mesh``.
        C (float): Sensing cost per unit length.
        U (int): Number of sensors, i.e. maximal number of intervals.
        mesh (Mesh): Current mesh.

    Returns:
        Action: A bin-aligned action with at most ``U`` intervals that
        maximises Σ_k Δ(ψ_k − C) over the covered bins.
    """
    selection = select_bins(bin_weights_for(bin_rates, C, mesh), U)
    return Action.from_mask(selection.mask, mesh)


def brute_force_select(bin_weights, U):
    """
    Exhaustive search over all bin subsets forming at most ``U`` runs.

    Ties are broken toward fewer bins, then toward the lexicographically
    smallest list of bin indices.

    Raises:
        SizeGuardError: for more than 20 bins.
    """
    weights = np.asarray(bin_weights, dtype=float)
    k = weights.size
    if k > BRUTE_FORCE_MAX_BINS:
        raise SizeGuardError(f"brute force is limited to {BRUTE_FORCE_MAX_BINS} bins, got {k}")
    mesh = Mesh(max(k, 1))
    if k == 0:
        return Action.empty()

    bits = ((np.arange(2 ** k)[:, None] >> np.arange(k)[None, :]) & 1).astype(bool)
    runs = bits[:, 0].astype(int) + np.sum(bits[:, 1:] & ~bits[:, :-1], axis=1)
    feasible = runs <= U
    totals = np.where(feasible, bits.astype(float) @ weights, -np.inf)
    best = totals.max()
    tied = np.flatnonzero(feasible & (totals >= best - 1e-12))
    winner = min(tied, key=lambda m: (int(bits[m].sum()), tuple(np.flatnonzero(bits[m]).tolist())))
    return Action.from_mask(bits[winner], mesh)


def action_weight(bin_weights, action, mesh):
    """Total weight of the bins covered by a bin-aligned action"""
    return float(np.asarray(bin_weights, dtype=float)[covered_mask(action, mesh)].sum())
