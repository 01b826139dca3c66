"""Residual evaluators, scaled decay series and log-log rate fitting."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdvb_asym import (
    DecaySeries,
    Moments,
    ProfileRequest,
    RealField,
    SolverConfig,
    collect_series,
    evolve,
    heat_kernel,
    lp_norm,
    make_grid,
    make_params,
    psi_field,
    rate_fit,
    reduced_limit_value,
    residual_corollary,
    residual_duhamel,
    residual_duhamel_field,
    residual_first_order,
    scale_exponent,
)
from kdvb_asym.diagnostics import _correction_values


def zero_moments(mass=0.0, m=0.0, mathcal=0.0):
    return Moments(mass, m, mathcal, 0.0, mathcal, 100.0, None)


@pytest.fixture(scope="module")
def grid():
    return make_grid(100.0, 1024)


class TestScaleExponent:
    def test_endpoints(self):
        assert scale_exponent(1.0) == pytest.approx(0.5)
        assert scale_exponent(2.0) == pytest.approx(0.75)
        assert scale_exponent(np.inf) == pytest.approx(1.0)


class TestDecaySeries:
    def test_rejects_unsorted_times(self):
        with pytest.raises(ValueError):
            DecaySeries("x", 1.0, [(2.0, 1.0), (1.0, 1.0)])

    def test_rejects_unknown_log_factor(self):
        with pytest.raises(ValueError):
            DecaySeries("x", 1.0, [(1.0, 1.0)], log_factor="mystery")

    @settings(max_examples=30, deadline=None)
    @given(exponent=st.floats(-3.0, -0.1), scale=st.floats(0.0, 2.0))
    def test_scaling_shifts_the_slope(self, exponent, scale):
        times = np.geomspace(2.0, 200.0, 12)
        series = DecaySeries(
            "synthetic", 1.0,
            [(float(t), float(t**exponent)) for t in times],
            scale_exponent=scale,
        )
        fit = rate_fit(series, window=(2.0, 200.0))
        assert fit.slope == pytest.approx(exponent, abs=1e-9)
        scaled = np.array([v for _, v in series.scaled_values()])
        fit2 = np.polyfit(np.log(times), np.log(scaled), 1)[0]
        assert fit2 == pytest.approx(exponent + scale, abs=1e-9)


class TestRateFit:
    def test_pure_power_law(self):
        times = np.geomspace(1.0, 1000.0, 20)
        series = DecaySeries("x", 1.0, [(float(t), float(t**-1.5)) for t in times])
        fit = rate_fit(series, window=(1.0, 1000.0))
        assert fit.slope == pytest.approx(-1.5, abs=1e-12)
        assert fit.fit_residual < 1e-12

    def test_log_factor_removed_before_fitting(self):
        times = np.geomspace(10.0, 10000.0, 25)
        series = DecaySeries(
            "x", 1.0,
            [(float(t), float(np.log(t) / t)) for t in times],
            log_factor="divide_by_log_t",
        )
        fit = rate_fit(series, window=(10.0, 10000.0))
        assert fit.slope == pytest.approx(-1.0, abs=1e-10)

    def test_default_window_is_last_decade(self):
        times = np.geomspace(1.0, 1000.0, 30)
        series = DecaySeries("x", 1.0, [(float(t), float(t**-1.0)) for t in times])
        fit = rate_fit(series)
        assert fit.window == (100.0, 1000.0)

    def test_too_few_positive_samples_rejected(self):
        series = DecaySeries("x", 1.0, [(float(t), 0.0) for t in (1, 2, 3, 4, 5, 6)])
        with pytest.raises(ValueError):
            rate_fit(series, window=(1.0, 6.0))

    def test_collect_series_wraps_evaluator(self):
        series = collect_series(
            lambda t, p: t**-2.0, np.geomspace(1, 100, 8), 2.0,
            scale_exp=1.0, label="synthetic",
        )
        assert series.label == "synthetic"
        assert series.samples[0] == (1.0, 1.0)


class TestProfileSelfSimilarity:
    def test_second_profile_norm_slope_is_exact(self):
        # ||Psi(., t)||_p = t^{-(1/2)(1-1/p)-1/2} ||Psi_*||_p; sampling on
        # grids scaled with sqrt(t) hits identical similarity points at each
        # t, so the fitted slope is exact to roundoff
        params = make_params(2.0, 3.0)
        times = np.geomspace(4.0, 64.0, 6)
        for p in (1.0, 2.0, np.inf):
            norms = []
            for t in times:
                g = make_grid(40.0 * np.sqrt(t), 1024)
                req = ProfileRequest(params, 0.1, 0.0, 0.0, t, g)
                norms.append(lp_norm(psi_field(req), p))
            slope = np.polyfit(np.log(times), np.log(norms), 1)[0]
            assert slope == pytest.approx(-scale_exponent(p), abs=1e-6)


@pytest.fixture(scope="module")
def nonlinear_run(grid):
    params = make_params(2.0, 3.0)
    u0 = RealField(grid, 0.1 * heat_kernel(grid.x, 1.0))
    times = sorted({*np.linspace(0.0, 1.0, 9), *np.geomspace(1.0, 20.0, 9)})
    cfg = SolverConfig(params, grid, 20.0, times, dt=0.05)
    return params, u0, evolve(u0, cfg)


class TestResiduals:
    def test_zero_beta_duhamel_residual_vanishes(self, grid):
        params = make_params(2.0, 0.0)
        u0 = RealField(grid, 0.1 * heat_kernel(grid.x, 1.0))
        cfg = SolverConfig(params, grid, 10.0, [10.0])
        traj = evolve(u0, cfg)
        val = residual_duhamel(traj, u0, zero_moments(mass=0.1), params, 10.0, np.inf)
        assert val < 1e-11

    def test_recombination_identity(self, grid, nonlinear_run):
        # first-order field = Duhamel field + moment and profile corrections
        params, u0, traj = nonlinear_run
        moments = Moments(0.1, 0.0, 2e-6, 1e-6, 1e-6, 20.0, None)
        t = 20.0
        duh_field = residual_duhamel_field(traj, u0, moments, params, t)
        first = residual_first_order(traj, u0, moments, params, t, np.inf)
        # rebuild the first-order field from the Duhamel one
        corrections = _correction_values(moments, params, t, grid, None)
        log_only = (
            params.beta * moments.M**3 / 3.0
            * (1.0 / (4.0 * np.sqrt(3.0) * np.pi))
            * np.log(t) * heat_kernel(grid.x, t, 1)
        )
        rebuilt = duh_field.values - corrections + log_only
        assert first == pytest.approx(
            float(np.max(np.abs(rebuilt))), rel=1e-10
        )

    def test_duhamel_residual_needs_late_time(self, grid, nonlinear_run):
        params, u0, traj = nonlinear_run
        with pytest.raises(ValueError):
            residual_duhamel(traj, u0, zero_moments(mass=0.1), params, 1.0, 1.0)

    def test_corollary_residual_self_consistency(self, grid):
        # feed the exact expansion as "solution": the residual reduces to the
        # norm of the correction profiles themselves
        params = make_params(2.5, 0.0)
        u0 = RealField(grid, 0.3 * heat_kernel(grid.x, 1.0))
        t = 4.0
        req = ProfileRequest(params, 0.3, 0.0, 0.0, t, grid)
        from kdvb_asym import expansion_field

        exact = expansion_field(req)
        cfg = SolverConfig(params, grid, t, [t])
        traj = evolve(u0, cfg)
        traj.snapshots[-1] = RealField(grid, exact.values, t)
        val = residual_corollary(traj, u0, zero_moments(mass=0.3), params, t, np.inf)
        assert val < 1e-9

    def test_reduced_limit_value_zero_data(self, grid):
        params = make_params(2.5, 0.0)
        u0 = RealField(grid, np.zeros(grid.point_count))
        cfg = SolverConfig(params, grid, 10.0, [10.0])
        traj = evolve(u0, cfg)
        val = reduced_limit_value(traj, u0, zero_moments(), params, 10.0, np.inf)
        assert val == pytest.approx(0.0, abs=1e-13)
