"""Pseudospectral simulation and asymptotic-profile verification for the
dispersive-dissipative equation u_t - u_xx - D^alpha d_x u + beta u^2 u_x = 0."""

from .spectral import (
    Grid1D,
    GridError,
    ModelParams,
    RealField,
    Regime,
    RegimeError,
    SpectralCoeffs,
    apply_multiplier,
    apply_semigroup,
    dispersion_symbol,
    frac_disp_power,
    h1_l1_size,
    inverse_transform,
    lp_norm,
    make_grid,
    spatial_derivative,
    tail_mass,
    transform,
)
from .profiles import (
    GAUSS_CUBE_COEFF,
    ProfileRequest,
    QuadratureError,
    QuadratureSpec,
    classify_alpha,
    duhamel_v_field,
    expansion_field,
    f_scaled,
    frac_heat_field,
    fstar,
    heat_kernel,
    limit_constants,
    log_correction_field,
    make_params,
    psi_field,
    psi_star,
    v_minus_log_term_rescaled,
)
from .solver import (
    BlowUpError,
    SolverConfig,
    Trajectory,
    duhamel_term,
    evolve,
    nonlinear_rhs,
)
from .observables import (
    Moments,
    TailMassError,
    compute_M_m,
    compute_mathcal_M,
    rho_field,
)
from .diagnostics import (
    DecaySeries,
    RateFit,
    collect_series,
    rate_fit,
    reduced_limit_value,
    residual_corollary,
    residual_duhamel,
    residual_duhamel_field,
    residual_first_order,
    scale_exponent,
)

__all__ = [name for name in dir() if not name.startswith("_")]
