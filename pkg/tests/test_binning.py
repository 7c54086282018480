import numpy as np
import pytest

from sensorbandit.binning import (
    Action,
    BinStats,
    Histogram,
    History,
    Mesh,
    RebinSchedule,
    action_to_bins,
    bins_for,
    covered_mask,
    maybe_rebin,
    stats_recompute,
)
from sensorbandit.exceptions import AlignmentError, ConfigError, DomainError


def run_full_sensing(schedule, horizon):
    """Sense [0, 1] without events for ``horizon`` rounds; return K per round"""
    histogram = Histogram(schedule)
    used = []
    for t in range(1, horizon + 1):
        used.append(histogram.mesh.k_count)
        histogram.record(t, Action.full(), [])
        histogram.end_round(t)
    return used, histogram


def random_aligned_action(mesh, rng, max_intervals=3):
    mask = rng.random(mesh.k_count) < 0.5
    action = Action.from_mask(mask, mesh)
    while len(action) > max_intervals:
        mask = rng.random(mesh.k_count) < 0.5
        action = Action.from_mask(mask, mesh)
    return action


class TestAction:

    def test_empty_and_full(self):
        assert Action.empty().is_empty
        assert Action.full().length == 1.0
        assert len(Action.full()) == 1

    @pytest.mark.parametrize('intervals', [
        ((0.5, 0.4),),
        ((-0.1, 0.4),),
        ((0.2, 1.2),),
        ((0.0, 0.5), (0.4, 0.6)),
        ((0.6, 0.8), (0.1, 0.2)),
    ])
    def test_invalid(self, intervals):
        with pytest.raises(DomainError):
            Action(intervals)

    def test_touching_intervals_allowed(self):
        action = Action(((0.0, 0.25), (0.25, 0.5)))
        assert action.length == 0.5

    def test_validate_sensor_count(self):
        action = Action(((0.0, 0.25), (0.5, 0.75)))
        assert action.validate(2) is action
        with pytest.raises(DomainError):
            action.validate(1)

    def test_from_mask_takes_maximal_runs(self):
        action = Action.from_mask([True, True, False, True], Mesh(4))
        assert action.intervals == ((0.0, 0.5), (0.75, 1.0))

    def test_from_bins(self):
        assert Action.from_bins([2, 3], Mesh(4)).intervals == ((0.25, 0.75),)
        with pytest.raises(DomainError):
            Action.from_bins([5], Mesh(4))


class TestMesh:

    def test_width_times_count(self):
        for k in (1, 4, 16, 2048):
            assert Mesh(k).width * k == 1.0

    def test_edges(self):
        np.testing.assert_array_equal(Mesh(4).edges(), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_point_at_one_falls_in_last_bin(self):
        np.testing.assert_array_equal(Mesh(4).bin_of([0.0, 0.25, 0.999, 1.0]), [0, 1, 3, 3])

    def test_doubled(self):
        child = Mesh(4).doubled(8)
        assert child == Mesh(8, round_created=8)

    def test_needs_a_bin(self):
        with pytest.raises(DomainError):
            Mesh(0)


class TestBinsFor:

    @pytest.mark.parametrize('k_count,k,expected', [
        (4, 1, (0.0, 0.25)),
        (4, 4, (0.75, 1.0)),
        (32, 17, (0.5, 0.53125)),
    ])
    def test_bounds(self, k_count, k, expected):
        assert bins_for(Mesh(k_count), k) == expected

    @pytest.mark.parametrize('k', [0, 5])
    def test_out_of_range(self, k):
        with pytest.raises(DomainError):
            bins_for(Mesh(4), k)


class TestActionToBins:

    def test_covered_bins(self):
        assert action_to_bins(Action(((0.25, 0.75),)), Mesh(4)) == {2, 3}

    def test_empty_action(self):
        assert action_to_bins(Action.empty(), Mesh(4)) == set()

    def test_misaligned(self):
        with pytest.raises(AlignmentError):
            action_to_bins(Action(((0.0, 0.3),)), Mesh(4))

    def test_alignment_error_is_domain_error(self):
        assert issubclass(AlignmentError, DomainError)

    def test_round_trip(self, rng):
        mesh = Mesh(32)
        for _ in range(100):
            action = random_aligned_action(mesh, rng, max_intervals=32)
            assert Action.from_bins(action_to_bins(action, mesh), mesh) == action

    def test_coarse_action_on_fine_mesh(self):
        mask = covered_mask(Action(((0.25, 0.5),)), Mesh(8))
        np.testing.assert_array_equal(mask, [False, False, True, True, False, False, False, False])


class TestRebinSchedule:

    def test_cuberoot_final_bins(self):
        used, histogram = run_full_sensing(RebinSchedule('cuberoot', 4), 1024)
        assert used[-1] == 32
        assert [r[0] for r in histogram.rebins] == [8, 64, 512]

    def test_linear_final_bins(self):
        used, _ = run_full_sensing(RebinSchedule('linear', 4), 1024)
        assert used[-1] == 2048

    def test_sqrt_final_bins_between(self):
        used, _ = run_full_sensing(RebinSchedule('sqrt', 4), 1024)
        k = used[-1]
        assert 32 < k < 2048
        assert k & (k - 1) == 0

    def test_bimodal_setting(self):
        assert RebinSchedule('cuberoot', 16).k_for_round(1000) == 128

    @pytest.mark.parametrize('kind', ['linear', 'sqrt', 'cuberoot'])
    def test_k_for_round_matches_histogram(self, kind):
        schedule = RebinSchedule(kind, 4)
        used, _ = run_full_sensing(schedule, 300)
        assert used == [schedule.k_for_round(t) for t in range(1, 301)]

    @pytest.mark.parametrize('kind', ['linear', 'sqrt', 'cuberoot'])
    def test_no_rebin_after_first_round(self, kind):
        schedule = RebinSchedule(kind, 4)
        assert not schedule.should_rebin(1, schedule.initial_mesh())

    def test_cuberoot_constants_stay_in_range(self):
        k0 = 4
        schedule = RebinSchedule('cuberoot', k0)
        mesh = schedule.initial_mesh()
        ratios = []
        for t in range(1, 100001):
            ratios.append(mesh.k_count / t ** (1.0 / 3.0))
            if schedule.should_rebin(t, mesh):
                mesh = mesh.doubled(t)
        assert min(ratios) >= k0 / 2 - 1e-9
        assert max(ratios) <= 2 * k0

    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            RebinSchedule('log', 4)


class TestStatsRecompute:

    def test_empty_history(self):
        stats = stats_recompute(History(), Mesh(4))
        assert stats == BinStats.zeros(4)

    def test_single_round(self):
        history = History()
        history.append(1, Action.full(), [0.1, 0.6, 0.7])
        stats = stats_recompute(history, Mesh(2))
        np.testing.assert_array_equal(stats.H, [1, 2])
        np.testing.assert_array_equal(stats.N, [1, 1])

    def test_unsensed_bins_have_no_events(self):
        history = History()
        history.append(1, Action(((0.5, 1.0),)), [0.6])
        history.append(2, Action(((0.0, 0.5),)), [0.1, 0.2])
        stats = stats_recompute(history, Mesh(4))
        np.testing.assert_array_equal(stats.H, [2, 0, 1, 0])
        np.testing.assert_array_equal(stats.N, [1, 1, 1, 1])

    def test_incremental_matches_recount(self, rng):
        histogram = Histogram(RebinSchedule('sqrt', 2))
        for t in range(1, 51):
            mesh = histogram.mesh
            action = random_aligned_action(mesh, rng)
            locations = np.concatenate([
                rng.uniform(lo, hi, size=rng.poisson(20 * (hi - lo))) for lo, hi in action.intervals
            ] or [np.empty(0)])
            histogram.record(t, action, np.sort(locations))
            histogram.end_round(t)
            assert stats_recompute(histogram.history, histogram.mesh) == histogram.stats
        assert len(histogram.rebins) >= 2


class TestMaybeRebin:

    def test_count_conservation(self, rng):
        schedule = RebinSchedule('linear', 4)
        histogram = Histogram(schedule)
        histogram.record(1, Action.full(), np.sort(rng.random(25)))
        histogram.end_round(1)
        before = histogram.stats.copy()
        histogram.record(2, Action(((0.25, 0.75),)), [0.3, 0.5])
        mid = histogram.stats.copy()
        assert histogram.end_round(2)
        assert histogram.stats.H.sum() == mid.H.sum()
        assert histogram.stats.N.sum() == 2 * mid.N.sum()
        assert mid.N.sum() == before.N.sum() + 2

    def test_children_inherit_sensing_counts(self):
        history = History()
        history.append(1, Action(((0.0, 0.5),)), [0.1, 0.4])
        schedule = RebinSchedule('linear', 2)
        mesh, stats = maybe_rebin(schedule, 2, Mesh(2), history)
        assert mesh.k_count == 4
        np.testing.assert_array_equal(stats.N, [1, 1, 0, 0])
        np.testing.assert_array_equal(stats.H, [1, 1, 0, 0])

    def test_no_rebin_keeps_mesh(self):
        schedule = RebinSchedule('cuberoot', 4)
        mesh = schedule.initial_mesh()
        new_mesh, stats = maybe_rebin(schedule, 3, mesh, History())
        assert new_mesh is mesh
        assert stats == BinStats.zeros(4)


class TestHistory:

    def test_dict_round_trip(self):
        history = History()
        history.append(1, Action.full(), [0.2, 0.9])
        history.append(2, Action(((0.25, 0.5),)), [])
        restored = History.from_dict(history.to_dict())
        assert restored.to_dict() == history.to_dict()
        np.testing.assert_array_equal(restored.all_locations(), [0.2, 0.9])
