"""
Increasingly fine histogram meshes, per-bin statistics and sensing actions
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import AlignmentError, ConfigError, DomainError

logger = logging.getLogger(__name__)

ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class Action:
    """A union of disjoint, sorted subintervals of [0, 1]; may be empty.

    Intervals are stored as ``(lo, hi)`` pairs with ``0 <= lo < hi <= 1``.
    Touching intervals are allowed, overlapping ones are rejected.
    """

    intervals: tuple = ()

    def __post_init__(self):
        cleaned = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        prev_hi = 0.0
        for lo, hi in cleaned:
            if not (0.0 <= lo < hi <= 1.0):
                raise DomainError(f"invalid interval [{lo}, {hi}]; need 0 <= lo < hi <= 1")
            if lo < prev_hi:
                raise DomainError(f"intervals overlap or are unsorted near {lo}")
            prev_hi = hi
        object.__setattr__(self, 'intervals', cleaned)

    @classmethod
    def empty(cls):
        return cls(())

    @classmethod
    def full(cls):
        return cls(((0.0, 1.0),))

    @classmethod
    def from_mask(cls, mask, mesh):
        """Assemble an action from a boolean per-bin mask (maximal runs of bins)"""
        mask = np.asarray(mask, dtype=bool)
        if mask.size != mesh.k_count:
            raise DomainError(f"mask has {mask.size} entries for a mesh of {mesh.k_count} bins")
        padded = np.concatenate(([False], mask, [False])).astype(np.int8)
        change = np.flatnonzero(np.diff(padded))
        starts, stops = change[0::2], change[1::2]
        k = mesh.k_count
        return cls(tuple((s / k, e / k) for s, e in zip(starts.tolist(), stops.tolist())))

    @classmethod
    def from_bins(cls, indices, mesh):
        """Assemble an action from 1-based bin indices"""
        mask = np.zeros(mesh.k_count, dtype=bool)
        for k in indices:
            bins_for(mesh, k)
            mask[k - 1] = True
        return cls.from_mask(mask, mesh)

    @property
    def is_empty(self):
        return not self.intervals

    @property
    def length(self):
        """Total sensed length |A|"""
        return float(sum(hi - lo for lo, hi in self.intervals))

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def validate(self, max_intervals):
        """Check the action uses at most ``max_intervals`` sensors"""
        if len(self.intervals) > max_intervals:
            raise DomainError(
                f"action uses {len(self.intervals)} intervals but only {max_intervals} sensors are available"
            )
        return self

    def to_list(self):
        return [[lo, hi] for lo, hi in self.intervals]


@dataclass(frozen=True)
class Mesh:
    """Uniform mesh of ``k_count`` bins of width 1/k_count.

    ``round_created`` is the round at whose end the mesh was introduced
    (0 for the initial mesh); schedules measure growth from it.
    """

    k_count: int
    round_created: int = 0

    def __post_init__(self):
        if int(self.k_count) < 1:
            raise DomainError(f"a mesh needs at least one bin, got {self.k_count}")
        object.__setattr__(self, 'k_count', int(self.k_count))

    @property
    def width(self):
        return 1.0 / self.k_count

    def edges(self):
        return np.arange(self.k_count + 1, dtype=float) / self.k_count

    def doubled(self, t):
        return Mesh(2 * self.k_count, round_created=t)

    def bin_of(self, locations):
        """0-based bin index of each location; the final bin is closed at 1.0"""
        x = np.asarray(locations, dtype=float)
        return np.clip(np.floor(x * self.k_count).astype(np.int64), 0, self.k_count - 1)


@dataclass
class BinStats:
    """Per-bin event counts ``H`` and sensed-round counts ``N`` for one mesh"""

    H: np.ndarray
    N: np.ndarray

    @classmethod
    def zeros(cls, k_count):
        return cls(np.zeros(k_count, dtype=np.int64), np.zeros(k_count, dtype=np.int64))

    @property
    def k_count(self):
        return int(self.H.size)

    def copy(self):
        return BinStats(self.H.copy(), self.N.copy())

    def __eq__(self, other):
        if not isinstance(other, BinStats):
            return NotImplemented
        return np.array_equal(self.H, other.H) and np.array_equal(self.N, other.N)


@dataclass
class RoundRecord:
    round: int
    action: Action
    locations: np.ndarray


@dataclass
class History:
    """Raw per-round record of actions and detected events, kept for rebinning"""

    records: list = field(default_factory=list)

    def append(self, t, action, locations):
        self.records.append(RoundRecord(t, action, np.asarray(locations, dtype=float)))

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def all_locations(self):
        if not self.records:
            return np.empty(0)
        return np.concatenate([r.locations for r in self.records])

    def to_dict(self):
        return {
            'rounds': [
                {'round': r.round, 'action': r.action.to_list(), 'events': r.locations.tolist()}
                for r in self.records
            ]
        }

    @classmethod
    def from_dict(cls, data):
        history = cls()
        for item in data.get('rounds', []):
            history.append(item['round'], Action(tuple(map(tuple, item['action']))), item['events'])
        return history


# exponent p such that f(t) = t^(1/p); doubling when t >= 2^p * t_last
SCHEDULE_POWERS = {
    'linear': 1,
    'sqrt': 2,
    'cuberoot': 3,
}


@dataclass(frozen=True)
class RebinSchedule:
    """Doubling rule for the number of bins.

    The mesh doubles at the end of round t when f(t) >= 2 f(t_last), with
    f the identity, square root or cube root and t_last the round of the
    previous doubling (1 before any doubling).
    """

    kind: str = 'cuberoot'
    k0: int = 4

    def __post_init__(self):
        if self.kind not in SCHEDULE_POWERS:
            raise ConfigError(f"unknown rebin schedule {self.kind!r}; expected one of {sorted(SCHEDULE_POWERS)}")
        if int(self.k0) < 1:
            raise ConfigError(f"initial bin count must be positive, got {self.k0}")

    @property
    def power(self):
        return SCHEDULE_POWERS[self.kind]

    def growth(self, t):
        """f(t) for this schedule"""
        return float(t) ** (1.0 / self.power)

    def initial_mesh(self):
        return Mesh(int(self.k0), round_created=0)

    def should_rebin(self, t, mesh):
        reference = max(mesh.round_created, 1)
        # integer form of f(t) >= 2 f(reference)
        return t >= (2 ** self.power) * reference

    def k_for_round(self, t):
        """Number of bins in use during round ``t``"""
        mesh = self.initial_mesh()
        while True:
            s = (2 ** self.power) * max(mesh.round_created, 1)
            if s >= t:
                return mesh.k_count
            mesh = mesh.doubled(s)


def bins_for(mesh, k):
    """Return the bounds ``(lo, hi)`` of 1-based bin ``k``, read as [lo, hi)"""
    if not (1 <= int(k) <= mesh.k_count):
        raise DomainError(f"bin index {k} outside 1..{mesh.k_count}")
    return ((k - 1) / mesh.k_count, k / mesh.k_count)


def covered_mask(action, mesh):
    """Boolean per-bin mask of the bins an action covers entirely"""
    mask = np.zeros(mesh.k_count, dtype=bool)
    for lo, hi in action.intervals:
        start, stop = lo * mesh.k_count, hi * mesh.k_count
        i, j = round(start), round(stop)
        if abs(start - i) > ALIGN_TOL or abs(stop - j) > ALIGN_TOL:
            raise AlignmentError(
                f"interval [{lo}, {hi}] is not aligned to a mesh of width {mesh.width}"
            )
        mask[i:j] = True
    return mask


def action_to_bins(action, mesh):
    """Return the set of 1-based bin indices covered by a bin-aligned action"""
    return {int(k) + 1 for k in np.flatnonzero(covered_mask(action, mesh))}


def stats_recompute(history, mesh):
    """
    Recount H and N for ``mesh`` from the raw history.

    A bin counts as sensed in round j when it lies inside A_j, and only
    events of such rounds that fall in the bin contribute to its H.
    """
    stats = BinStats.zeros(mesh.k_count)
    for record in history:
        mask = covered_mask(record.action, mesh)
        stats.N += mask
        if record.locations.size:
            bins = mesh.bin_of(record.locations)
            bins = bins[mask[bins]]
            stats.H += np.bincount(bins, minlength=mesh.k_count)
    return stats


def maybe_rebin(schedule, t, mesh, history, stats=None):
    """
    Apply the schedule at the end of round ``t``.

    On doubling each child bin inherits N from its parent, and H is
    recounted from the stored events. Returns the mesh to use from round
    t + 1 and its statistics.
    """
    if not schedule.should_rebin(t, mesh):
        if stats is None:
            stats = stats_recompute(history, mesh)
        return mesh, stats
    if stats is None:
        stats = stats_recompute(history, mesh)
    child = mesh.doubled(t)
    child_stats = BinStats(
        H=np.bincount(child.bin_of(history.all_locations()), minlength=child.k_count).astype(np.int64),
        N=np.repeat(stats.N, 2),
    )
    logger.debug("rebin after round %d: %d -> %d bins", t, mesh.k_count, child.k_count)
    return child, child_stats


class Histogram:
    """
    Mutable histogram state of one run: mesh, statistics, history and schedule.

    Call :meth:`record` once per round after observing, then
    :meth:`end_round`, which applies the rebin schedule.
    """

    def __init__(self, schedule):
        self.schedule = schedule
        self.mesh = schedule.initial_mesh()
        self.stats = BinStats.zeros(self.mesh.k_count)
        self.history = History()
        self.rebins = []

    def record(self, t, action, locations):
        mask = covered_mask(action, self.mesh)
        locations = np.asarray(locations, dtype=float)
        self.history.append(t, action, locations)
        self.stats.N += mask
        if locations.size:
            bins = self.mesh.bin_of(locations)
            self.stats.H += np.bincount(bins[mask[bins]], minlength=self.mesh.k_count)

    def end_round(self, t):
        """Apply the schedule; returns True when the mesh doubled"""
        old = self.mesh
        self.mesh, self.stats = maybe_rebin(self.schedule, t, self.mesh, self.history, self.stats)
        if self.mesh is not old:
            self.rebins.append((t, old.k_count, self.mesh.k_count))
            return True
        return False
