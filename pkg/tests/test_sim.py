import math

import numpy as np
import pytest

from paoiplan import (
    AllocationPlan,
    Scenario,
    SimConfig,
    SolveMethod,
    exponent_root,
    simulate_plan,
    simulate_sensor,
    solve_exact,
)

HOOK_CONFIG = SimConfig(warmup=0, seed=1)


class TestSimConfig:
    def test_defaults(self):
        config = SimConfig()
        assert config.num_samples == 1_000_000
        assert config.warmup == 10_000
        assert (config.fit_lo_quantile, config.fit_hi_quantile) == (0.90, 0.999)

    def test_rejects_small_sample_count(self):
        with pytest.raises(ValueError, match="num_samples"):
            SimConfig(num_samples=999)

    def test_rejects_negative_warmup(self):
        with pytest.raises(ValueError, match="warmup"):
            SimConfig(warmup=-1)

    @pytest.mark.parametrize("lo,hi", [(0.9, 0.9), (0.99, 0.9), (0.0, 0.5), (0.9, 1.0)])
    def test_rejects_bad_quantile_window(self, lo, hi):
        with pytest.raises(ValueError, match="quantiles"):
            SimConfig(fit_lo_quantile=lo, fit_hi_quantile=hi)


class TestDeliveryRecursion:
    def test_no_queueing_case(self):
        estimate = simulate_sensor(1.0, 1.0, HOOK_CONFIG, service_times=[0.5, 0.5])
        summary = estimate.paoi_samples_summary
        assert (summary.count, summary.mean, summary.max) == (1, 1.5, 1.5)

    def test_queueing_case(self):
        estimate = simulate_sensor(1.0, 1.0, HOOK_CONFIG, service_times=[1.5, 0.5])
        assert estimate.paoi_samples_summary.mean == 2.0

    def test_longer_hand_computed_sequence(self):
        # D: 0.5, 1.5, 4.5, 5.0, 6.5, 6.75 against samples at 0, 1, 2, 3, 4, 5.
        times = [0.5, 0.5, 2.5, 0.5, 1.5, 0.25]
        estimate = simulate_sensor(1.0, 1.0, HOOK_CONFIG, service_times=times)
        summary = estimate.paoi_samples_summary
        assert summary.count == 5
        assert summary.mean == pytest.approx(np.mean([1.5, 3.5, 3.0, 3.5, 2.75]), abs=1e-15)
        assert summary.max == 3.5

    def test_warmup_discards_initial_peaks(self):
        times = [0.5, 0.5, 2.5, 0.5, 1.5, 0.25]
        config = SimConfig(warmup=3, seed=1)
        estimate = simulate_sensor(1.0, 1.0, config, service_times=times)
        summary = estimate.paoi_samples_summary
        # Peaks for packets 4..6 survive; the queue state still carries over.
        assert summary.count == 3
        assert summary.mean == pytest.approx(np.mean([3.0, 3.5, 2.75]), abs=1e-15)

    def test_rejects_degenerate_service_sequences(self):
        with pytest.raises(ValueError, match="at least two"):
            simulate_sensor(1.0, 1.0, HOOK_CONFIG, service_times=[0.5])
        with pytest.raises(ValueError, match="strictly positive"):
            simulate_sensor(1.0, 1.0, HOOK_CONFIG, service_times=[0.5, 0.0])


class TestTailEstimate:
    def test_determinism_per_seed(self):
        config = SimConfig(num_samples=5000, warmup=100, seed=9)
        first = simulate_sensor(1.0, 2.0, config)
        second = simulate_sensor(1.0, 2.0, config)
        assert first == second

    def test_streams_are_independent(self):
        config = SimConfig(num_samples=5000, warmup=100, seed=9)
        base = simulate_sensor(1.0, 2.0, config, stream=0)
        other = simulate_sensor(1.0, 2.0, config, stream=1)
        assert base.paoi_samples_summary != other.paoi_samples_summary

    def test_peaks_exceed_sampling_period(self):
        # Every peak is at least one period plus one service time.
        from paoiplan.sim import _peak_ages

        rng = np.random.default_rng(4)
        times = (-np.log1p(-rng.random(20_000)) / 1.3).tolist()
        ages = _peak_ages(times, 0.7)
        assert all(age > 0.7 for age in ages)
        assert all(age >= t + 0.7 for age, t in zip(ages, times[1:]))

    def test_ccdf_matches_direct_counting(self):
        ages = [1.5, 3.5, 3.0, 3.5, 2.75]
        config = SimConfig(warmup=0, seed=1, fit_lo_quantile=0.05, fit_hi_quantile=0.95)
        estimate = simulate_sensor(1.0, 1.0, config, service_times=[0.5, 0.5, 2.5, 0.5, 1.5, 0.25])
        assert len(estimate.ccdf_points) == 50
        for x, p in estimate.ccdf_points:
            assert p == pytest.approx(np.mean(np.asarray(ages) >= x), abs=1e-15)
        probabilities = [p for _, p in estimate.ccdf_points]
        assert all(a >= b for a, b in zip(probabilities, probabilities[1:]))

    def test_ccdf_is_one_at_or_below_minimum_sample(self):
        # Peaks 2, 2, 4, 3.5: the 0.2-quantile grid start sits on the
        # duplicated minimum, where the empirical CCDF must be exactly 1.
        config = SimConfig(warmup=0, seed=1, fit_lo_quantile=0.2, fit_hi_quantile=0.95)
        estimate = simulate_sensor(1.0, 1.0, config, service_times=[1.0, 1.0, 1.0, 3.0, 0.5])
        x0, p0 = estimate.ccdf_points[0]
        assert x0 == 2.0
        assert p0 == 1.0

    def test_degenerate_window_reports_fit_error(self):
        config = SimConfig(num_samples=1000, warmup=0, seed=3)
        estimate = simulate_sensor(1.0, 3.0, config)
        assert estimate.fitted_exponent is None
        assert estimate.stderr is None
        assert "degenerate fit window" in estimate.fit_error

    @pytest.mark.parametrize("nu,b", [(1.0, 2.0), (1.0, 3.0), (2.0, 1.5)])
    def test_fitted_exponent_tracks_theory(self, nu, b):
        config = SimConfig(num_samples=1_000_000, warmup=10_000, seed=42)
        estimate = simulate_sensor(nu, b, config)
        target = exponent_root(nu, b)
        assert estimate.fit_error is None
        assert abs(estimate.fitted_exponent - target) / target <= 0.10
        assert estimate.stderr < 0.05 * target


class TestSimulatePlan:
    def test_length_mismatch_raises(self):
        scenario = Scenario.from_arrays(mu=(1, 1), cost=(1, 1), theta=(0.25, 0.25))
        plan = AllocationPlan(r=(1.0,), b=(1.0,), method=SolveMethod.EXACT, total_cost=1.0)
        with pytest.raises(ValueError, match="sensors"):
            simulate_plan(scenario, plan, SimConfig())

    def test_inflated_delays_overshoot_the_required_exponent(self):
        scenario = Scenario.from_arrays(mu=(1, 1), cost=(1, 1), theta=(0.25, 0.25))
        exact = solve_exact(scenario)
        doubled = tuple(2 * b for b in exact.b)
        plan = AllocationPlan(
            r=exact.r,
            b=doubled,
            method=SolveMethod.EXACT,
            total_cost=math.fsum(c * b for c, b in zip(scenario.cost, doubled)),
        )
        config = SimConfig(num_samples=300_000, warmup=3_000, seed=10)
        estimates = simulate_plan(scenario, plan, config)
        for estimate, r_i, b_i in zip(estimates, plan.r, plan.b):
            target = exponent_root(1.0 * r_i, b_i)
            assert target > 0.25
            assert abs(estimate.fitted_exponent - target) / target <= 0.10
            assert estimate.fitted_exponent > 0.25

    def test_degenerate_config_reports_fit_error_per_sensor(self):
        scenario = Scenario.from_arrays(mu=(1, 1), cost=(1, 1), theta=(0.25, 0.25))
        plan = solve_exact(scenario)
        estimates = simulate_plan(scenario, plan, SimConfig(num_samples=1000, warmup=0, seed=2))
        assert all(e.fitted_exponent is None for e in estimates)
        assert all(e.fit_error for e in estimates)
