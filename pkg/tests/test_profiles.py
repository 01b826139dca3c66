"""Profile constructors checked against brute-force quadrature oracles.

The Gaussian-collapse reductions used throughout the package are verified
here against nested scipy quadrature before anything downstream relies on
them: the second profile, the heat Duhamel integral of the cubed kernel,
and the rescaled route to their difference.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from kdvb_asym import (
    GAUSS_CUBE_COEFF,
    ProfileRequest,
    RealField,
    classify_alpha,
    duhamel_v_field,
    expansion_field,
    f_scaled,
    frac_heat_field,
    fstar,
    heat_kernel,
    limit_constants,
    lp_norm,
    make_grid,
    make_params,
    psi_star,
    v_minus_log_term_rescaled,
)

C8 = 1.0 / (8.0 * np.sqrt(np.pi**3))


def brute_psi_star(x: float) -> float:
    """Nested-quadrature oracle for the unit-scale second profile.

    The s-integral is split at 1/2 and the x-derivative is moved onto
    whichever convolution factor stays smooth at that endpoint.
    """
    def f_kernel(y, s):
        return s ** (-1.5) * (
            C8 * np.exp(-0.75 * y**2 / s)
            - C8 / np.sqrt(3.0) * np.exp(-0.25 * y**2 / s)
        )

    def df_kernel(y, s):
        return s ** (-1.5) * (
            C8 * (-1.5 * y / s) * np.exp(-0.75 * y**2 / s)
            - C8 / np.sqrt(3.0) * (-0.5 * y / s) * np.exp(-0.25 * y**2 / s)
        )

    def inner_dg(s):
        val, _ = quad(
            lambda y: heat_kernel(x - y, 1.0 - s, 1) * f_kernel(y, s),
            -np.inf, np.inf, limit=200,
        )
        return val

    def inner_df(s):
        val, _ = quad(
            lambda y: heat_kernel(x - y, 1.0 - s) * df_kernel(y, s),
            -np.inf, np.inf, limit=200,
        )
        return val

    lo, _ = quad(inner_dg, 0.0, 0.5, limit=200)
    hi, _ = quad(inner_df, 0.5, 1.0, limit=200)
    return lo + hi


class TestHeatKernel:
    def test_normalization(self):
        x = np.linspace(-50.0, 50.0, 20001)
        for t in (0.5, 1.0, 4.0):
            assert np.trapezoid(heat_kernel(x, t), x) == pytest.approx(1.0, abs=1e-12)

    def test_derivatives_match_finite_differences(self):
        x = np.linspace(-5.0, 5.0, 101)
        h = 1e-5
        for l in (1, 2, 3):
            fd = (heat_kernel(x + h, 1.0, l - 1) - heat_kernel(x - h, 1.0, l - 1)) / (2 * h)
            assert np.max(np.abs(heat_kernel(x, 1.0, l) - fd)) < 1e-8

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            heat_kernel(0.0, 0.0)
        with pytest.raises(ValueError):
            heat_kernel(0.0, 1.0, 7)


class TestGaussianReductions:
    def test_kernel_collapse_identity(self):
        # F(y, s) = c3 s^{-1} [G(y, 1 - 2s/3 ... ) shifted form at scale s]
        y = np.linspace(-8.0, 8.0, 201)
        for s in np.linspace(0.02, 0.98, 50):
            lhs = f_scaled(y, s)
            rhs = GAUSS_CUBE_COEFF / s * (heat_kernel(y, s / 3.0) - heat_kernel(y, s))
            assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_gaussian_cube_identity(self):
        y = np.linspace(-8.0, 8.0, 201)
        for tau in np.linspace(1.0, 5.0, 50):
            lhs = heat_kernel(y, tau) ** 3
            rhs = GAUSS_CUBE_COEFF / tau * heat_kernel(y, tau / 3.0)
            assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_cubed_kernel_mass(self):
        # int G^3 dy = c3 / tau since G(., tau/3) has unit mass
        y = np.linspace(-60.0, 60.0, 48001)
        for tau in (1.0, 2.5, 10.0):
            val = np.trapezoid(heat_kernel(y, tau) ** 3, y)
            assert val == pytest.approx(GAUSS_CUBE_COEFF / tau, rel=1e-12)


class TestSecondProfile:
    def test_fstar_even_and_zero_mean(self):
        y = np.linspace(-40.0, 40.0, 16001)
        vals = fstar(y)
        assert np.max(np.abs(vals - fstar(-y))) == 0.0
        assert abs(np.trapezoid(vals, y)) < 1e-14

    def test_psi_star_odd_zero_at_origin_zero_mean(self):
        x = np.linspace(-40.0, 40.0, 4001)
        vals = psi_star(x)
        assert abs(psi_star(0.0)) < 1e-12
        assert np.max(np.abs(vals + psi_star(-x))) < 1e-12
        assert abs(np.trapezoid(vals, x)) < 1e-9

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_psi_star_against_nested_quadrature(self, x):
        assert psi_star(x) == pytest.approx(brute_psi_star(x), abs=1e-9)


class TestDuhamelIntegral:
    def test_against_spectral_convolution_oracle(self):
        # v(x, t) = int_1^t (dG/dx(t - tau) * G^3(tau))(x) dtau by trapezoid
        # over a dense tau ladder, convolutions done with the closed form
        grid = make_grid(60.0, 512)
        t = 2.0
        taus = np.linspace(1.0, t, 4001)
        vals = []
        for tau in taus:
            # dG/dx(t - tau) * G^3(tau) = c3 tau^{-1} dG/dx(., t - tau + tau/3)
            vals.append(
                GAUSS_CUBE_COEFF / tau * heat_kernel(grid.x, t - 2.0 * tau / 3.0, 1)
            )
        oracle = np.trapezoid(np.array(vals), taus, axis=0)
        ours = duhamel_v_field(t, grid).values
        assert np.max(np.abs(ours - oracle)) < 1e-9

    @pytest.mark.parametrize("t", [2.0, 4.0, 16.0])
    def test_log_subtracted_field_two_routes(self, t):
        grid = make_grid(100.0, 1024)
        direct = duhamel_v_field(t, grid).values - (
            GAUSS_CUBE_COEFF * np.log(t) * heat_kernel(grid.x, t, 1)
        )
        rescaled = v_minus_log_term_rescaled(t, grid).values
        assert np.max(np.abs(direct - rescaled)) < 1e-10

    def test_rejects_time_at_or_below_one(self):
        grid = make_grid(20.0, 64)
        with pytest.raises(ValueError):
            duhamel_v_field(1.0, grid)


class TestRegimeClassification:
    @pytest.mark.parametrize("alpha,case,n", [
        (Fraction(5, 2), "I", 0),
        (Fraction(3, 2), "II", 2),
        (Fraction(7, 5), "III", 2),
        (Fraction(2, 1), "II", 1),
        (2.5, "I", 0),
        (1.4, "III", 2),
    ])
    def test_known_values(self, alpha, case, n):
        regime = classify_alpha(alpha)
        assert regime.case == case
        if case != "I":
            assert regime.n == n

    @settings(max_examples=50, deadline=None)
    @given(n=st.integers(1, 20))
    def test_exact_resonances(self, n):
        regime = classify_alpha(Fraction(n + 1, n))
        assert regime.case == "II" and regime.n == n

    @settings(max_examples=50, deadline=None)
    @given(n=st.integers(1, 12), frac=st.floats(0.15, 0.85))
    def test_open_intervals_give_case_three(self, n, frac):
        lo, hi = (n + 2) / (n + 1), (n + 1) / n
        alpha = lo + frac * (hi - lo)
        regime = classify_alpha(alpha)
        assert regime.case == "III" and regime.n == n

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            classify_alpha(3.5)
        with pytest.raises(ValueError):
            classify_alpha(1.0)

    def test_near_resonance_float_snaps_within_tolerance(self):
        # within tol of a resonance resolves to Case II; beyond tol the value
        # falls into the adjacent open interval
        assert classify_alpha(1.5 + 1e-14).case == "II"
        just_above = classify_alpha(1.5 + 1e-9, tol=1e-12)
        assert just_above.case == "III" and just_above.n == 1
        just_below = classify_alpha(1.5 - 1e-9, tol=1e-12)
        assert just_below.case == "III" and just_below.n == 2

    def test_rational_text_accepted(self):
        params = make_params("3/2", 1.0)
        assert params.regime.case == "II" and params.regime.n == 2


class TestExpansionField:
    def test_case_one_is_gaussian_pair(self):
        grid = make_grid(60.0, 1024)
        params = make_params(2.5, 1.0)
        # Case I truncates at k = 0: M G - m dG/dx exactly
        req = ProfileRequest(params, 0.3, 0.2, 0.0, 2.0, grid)
        field = expansion_field(req)
        exact = 0.3 * heat_kernel(grid.x, 2.0) - 0.2 * heat_kernel(grid.x, 2.0, 1)
        assert np.max(np.abs(field.values - exact)) < 1e-12

    def test_mass_only_drops_first_moment(self):
        grid = make_grid(60.0, 1024)
        params = make_params(2.5, 1.0)
        req = ProfileRequest(params, 0.3, 0.2, 0.0, 2.0, grid)
        field = expansion_field(req, mass_only=True)
        exact = 0.3 * heat_kernel(grid.x, 2.0)
        assert np.max(np.abs(field.values - exact)) < 1e-12

    def test_resonant_case_adds_fractional_term(self):
        grid = make_grid(60.0, 1024)
        params = make_params("2", 1.0)
        t = 2.0
        req = ProfileRequest(params, 0.3, 0.0, 0.0, t, grid)
        field = expansion_field(req)
        # Case II(1): M G + t M (D^alpha d_x) G, the latter = -t M d_x^3 G
        exact = 0.3 * heat_kernel(grid.x, t) - t * 0.3 * heat_kernel(grid.x, t, 3)
        assert np.max(np.abs(field.values - exact)) < 1e-10


class TestKernelBoundFields:
    def test_zero_powers_recover_heat_kernel(self):
        grid = make_grid(60.0, 1024)
        field = frac_heat_field(2.0, grid, 1.5, k=0, l=0)
        assert np.max(np.abs(field.values - heat_kernel(grid.x, 2.0))) < 1e-12

    def test_quadratic_alpha_matches_derivatives(self):
        # at alpha = 2 the operator is -d_x^3, so (k, l) = (1, 1) gives -d_x^4 G
        grid = make_grid(60.0, 1024)
        field = frac_heat_field(2.0, grid, 2.0, k=1, l=1)
        assert np.max(np.abs(field.values + heat_kernel(grid.x, 2.0, 4))) < 1e-12

    @pytest.mark.parametrize("k,l,p", [(1, 0, 2.0), (1, 1, np.inf), (2, 0, 1.0)])
    @pytest.mark.parametrize("alpha", [1.5, 2.5])
    def test_norm_decay_slopes(self, k, l, p, alpha):
        grid = make_grid(200.0, 4096)
        times = np.geomspace(10.0, 1000.0, 9)
        norms = [lp_norm(frac_heat_field(t, grid, alpha, k, l), p) for t in times]
        slope = np.polyfit(np.log(times), np.log(norms), 1)[0]
        inv_p = 0.0 if p == np.inf else 1.0 / p
        theo = -(0.5 * (1.0 - inv_p) + k * (alpha + 1.0) / 2.0 + l / 2.0)
        assert slope == pytest.approx(theo, abs=0.02)


class TestLimitConstants:
    def test_coefficient_identity(self):
        # beta M^3/(12 sqrt3 pi) at beta = 3 equals M^3/(4 sqrt3 pi)
        beta, mass = 3.0, 0.17
        assert beta * mass**3 / 3.0 * GAUSS_CUBE_COEFF == pytest.approx(
            mass**3 / (4.0 * np.sqrt(3.0) * np.pi), rel=1e-15
        )

    def test_linear_data_constant_reduces_to_moment_norm(self):
        grid = make_grid(60.0, 2048)
        params = make_params(2.5, 0.0)
        req = ProfileRequest(params, 0.0, 0.25, 0.0, 10.0, grid)
        _, c_dagger = limit_constants(req, np.inf)
        exact = 0.25 * np.max(np.abs(heat_kernel(grid.x, 1.0, 1)))
        assert c_dagger == pytest.approx(exact, rel=1e-10)

    def test_star_constant_combines_duhamel_and_profile(self):
        grid = make_grid(60.0, 2048)
        params = make_params(2.5, 3.0)
        req = ProfileRequest(params, 0.1, 0.0, 2e-6, 10.0, grid)
        c_star, _ = limit_constants(req, 1.0)
        ref = RealField(grid, (
            params.beta * 2e-6 / 3.0 * heat_kernel(grid.x, 1.0, 1)
            + params.beta * 0.1**3 / 3.0 * psi_star(grid.x)
        ), 1.0)
        assert c_star == pytest.approx(lp_norm(ref, 1.0), rel=1e-12)
