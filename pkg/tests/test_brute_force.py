"""Exhaustive schedule enumeration: guards, determinism, solver bounds."""

import numpy as np
import pytest

from sircontrol import (
    RunningCost,
    TooLargeError,
    brute_force_best,
    control_levels,
    evaluate_objective,
    expand_piecewise_schedule,
    integrate_state_forward,
    interval_boundaries,
    running_cost,
    solve_shooting,
)

from conftest import make_baseline_params


class TestControlLevels:
    def test_endpoints_always_present(self):
        for n in (2, 4, 7):
            levels = control_levels(0.9, n)
            assert levels[0] == 0.0
            assert levels[-1] == 0.9
            assert len(levels) == n
            assert np.all(np.diff(levels) > 0.0)

    def test_single_level_is_zero(self):
        assert np.array_equal(control_levels(0.9, 1), [0.0])

    def test_rejects_no_levels(self):
        with pytest.raises(ValueError):
            control_levels(0.9, 0)


class TestBruteForce:
    def test_singleton_search_equals_uncontrolled_flow(self, baseline_params, baseline_cost):
        result = brute_force_best(baseline_cost, baseline_params, n_intervals=1, levels_per_control=1)
        zeros = np.zeros(baseline_params.n_steps + 1)
        free = integrate_state_forward(zeros, zeros, baseline_cost, baseline_params)
        assert result.n_schedules == 1
        assert result.objective == evaluate_objective(free, baseline_cost)

    def test_zero_state_weight_prefers_all_zero_schedule(self, baseline_params):
        cost = RunningCost(a_i=0.0, w1=1.0, w2=1.0)
        result = brute_force_best(cost, baseline_params, n_intervals=2, levels_per_control=3)
        assert np.all(result.u1_levels == 0.0)
        assert np.all(result.u2_levels == 0.0)
        assert result.objective == 0.0

    def test_enumeration_guard(self, baseline_params, baseline_cost):
        with pytest.raises(TooLargeError):
            brute_force_best(baseline_cost, baseline_params, n_intervals=5, levels_per_control=4)

    def test_batch_path_matches_scalar_integrator(self, baseline_params, baseline_cost):
        # The reported best objective must be the same number the scalar
        # forward integrator assigns to the winning schedule.
        result = brute_force_best(baseline_cost, baseline_params, n_intervals=3, levels_per_control=2)
        bounds = interval_boundaries(baseline_params.n_steps, 3)
        traj = integrate_state_forward(
            expand_piecewise_schedule(result.u1_levels, bounds, baseline_params.n_steps),
            expand_piecewise_schedule(result.u2_levels, bounds, baseline_params.n_steps),
            baseline_cost, baseline_params,
        )
        assert result.objective == pytest.approx(evaluate_objective(traj, baseline_cost), rel=1e-12)

    def test_deterministic_repeat(self, baseline_params, baseline_cost):
        a = brute_force_best(baseline_cost, baseline_params, n_intervals=2, levels_per_control=3)
        b = brute_force_best(baseline_cost, baseline_params, n_intervals=2, levels_per_control=3)
        assert a.objective == b.objective
        assert np.array_equal(a.u1_levels, b.u1_levels)
        assert np.array_equal(a.u2_levels, b.u2_levels)

    def test_refining_levels_never_increases_the_best(self):
        p = make_baseline_params(n_steps=500)
        cost = running_cost(p)
        coarse = brute_force_best(cost, p, n_intervals=2, levels_per_control=4)
        fine = brute_force_best(cost, p, n_intervals=2, levels_per_control=8)
        assert fine.objective <= coarse.objective

    def test_never_beats_the_converged_solver(self):
        p = make_baseline_params(n_steps=500)
        cost = running_cost(p)
        report = solve_shooting(cost, p)
        assert report.converged
        result = brute_force_best(cost, p, n_intervals=2, levels_per_control=4)
        assert report.objective <= result.objective + 1e-9 * abs(result.objective)
