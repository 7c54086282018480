import numpy as np
import pytest
from scipy import stats

from sensorbandit.binning import Action
from sensorbandit.exceptions import DomainError
from sensorbandit.point_process import EventBatch, eval_rate, integrate_rate, simulate_round
from sensorbandit.rates import ConstantRate


def event_counts(rate, action, rng, draws):
    return np.array([simulate_round(rate, action, rng).count for _ in range(draws)])


class TestWrappers:

    def test_eval_rate(self, unimodal):
        assert eval_rate(unimodal, 0.5) == pytest.approx(11.9048, abs=1e-4)
        with pytest.raises(DomainError):
            eval_rate(unimodal, 2.0)

    def test_integrate_rate(self, unimodal):
        assert integrate_rate(unimodal, 0.0, 1.0) == pytest.approx(500.0 / 63.0)
        assert integrate_rate(unimodal, 0.3, 0.3) == 0.0


class TestSimulateRound:

    def test_zero_rate_gives_empty_batch(self, rng):
        batch = simulate_round(ConstantRate(0.0), Action.full(), rng, round=4)
        assert batch == EventBatch(round=4)
        assert batch.count == 0

    def test_empty_action(self, unimodal, rng):
        assert simulate_round(unimodal, Action.empty(), rng).count == 0

    def test_events_sorted_and_inside_action(self, bimodal, rng):
        action = Action(((0.0, 0.25), (0.5, 0.875)))
        for t in range(1, 50):
            batch = simulate_round(bimodal, action, rng, round=t)
            x = batch.as_array()
            assert batch.round == t
            assert np.all(np.diff(x) >= 0)
            inside = ((x >= 0.0) & (x < 0.25)) | ((x >= 0.5) & (x < 0.875))
            assert np.all(inside)

    def test_overlapping_action_rejected(self, unimodal, rng):
        with pytest.raises(DomainError):
            simulate_round(unimodal, [(0.0, 0.5), (0.4, 0.6)], rng)

    def test_accepts_plain_interval_list(self, constant_five, rng):
        batch = simulate_round(constant_five, [(0.0, 1.0)], rng)
        assert all(0.0 <= x <= 1.0 for x in batch.locations)

    def test_same_seed_same_events(self, bimodal):
        first = simulate_round(bimodal, Action.full(), np.random.default_rng(5))
        second = simulate_round(bimodal, Action.full(), np.random.default_rng(5))
        assert first == second

    def test_constant_rate_count_mean(self, constant_five, rng):
        draws = 4000
        counts = event_counts(constant_five, Action.full(), rng, draws)
        assert abs(counts.mean() - 5.0) < 4 * np.sqrt(5.0 / draws)

    def test_unimodal_count_mean(self, unimodal, rng):
        draws = 4000
        action = Action(((0.3, 0.7),))
        expected = integrate_rate(unimodal, 0.3, 0.7)
        counts = event_counts(unimodal, action, rng, draws)
        assert abs(counts.mean() - expected) < 4 * np.sqrt(expected / draws)

    def test_restriction(self, unimodal, rng):
        # events of [0.2, 0.8] that fall in [0.4, 0.6] behave like events of [0.4, 0.6]
        draws = 4000
        wide = [simulate_round(unimodal, Action(((0.2, 0.8),)), rng).as_array() for _ in range(draws)]
        restricted = np.array([np.sum((x >= 0.4) & (x < 0.6)) for x in wide])
        direct = event_counts(unimodal, Action(((0.4, 0.6),)), rng, draws)
        expected = integrate_rate(unimodal, 0.4, 0.6)
        se = np.sqrt(2 * expected / draws)
        assert abs(restricted.mean() - direct.mean()) < 4 * se


@pytest.mark.slow
class TestThinningMoments:

    def test_constant_rate_moments(self, constant_five, rng):
        draws = 100000
        counts = event_counts(constant_five, Action.full(), rng, draws)
        assert abs(counts.mean() - 5.0) < 3 * np.sqrt(5.0 / draws)
        assert counts.var(ddof=1) == pytest.approx(5.0, rel=0.05)

    @pytest.mark.parametrize('kind', ['unimodal', 'bimodal'])
    def test_count_mean_matches_integral(self, kind, unimodal, bimodal, rng):
        rate = {'unimodal': unimodal, 'bimodal': bimodal}[kind]
        draws = 100000
        action = Action(((0.3, 0.7),))
        expected = integrate_rate(rate, 0.3, 0.7)
        counts = event_counts(rate, action, rng, draws)
        assert abs(counts.mean() - expected) < 3 * np.sqrt(expected / draws)

    def test_constant_rate_poisson_goodness_of_fit(self, constant_five, rng):
        draws = 10000
        counts = event_counts(constant_five, Action.full(), rng, draws)
        top = 12
        observed = np.bincount(np.minimum(counts, top), minlength=top + 1)
        probs = stats.poisson.pmf(np.arange(top), 5.0)
        probs = np.append(probs, 1.0 - probs.sum())
        _, p_value = stats.chisquare(observed, probs * draws)
        assert p_value > 0.001
