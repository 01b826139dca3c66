"""Closed-form and quadrature constructors for the asymptotic profiles.

Everything is built from the heat kernel G(x,t) = e^{-x^2/4t}/sqrt(4 pi t):
the Gaussian-difference kernel, the self-similar second profile of the
nonlinear correction, the logarithmic correction term, the regime-dependent
linear expansion and the limiting constants of the sharp-rate statements.

The two singular 2-D integrals (the second profile at t=1 and the heat
Duhamel integral) are evaluated through 1-D reductions obtained by
collapsing Gaussian convolutions:

    G(1-s) * F(s)  = c3 * s^{-1} [G(., 1 - 2s/3) - G(., 1)],
    G^3(., tau)    = c3 * tau^{-1} G(., tau/3),          c3 = 1/(4 sqrt(3) pi).

Both reductions are exercised against brute-force nested quadrature in the
test suite before anything downstream relies on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import math

import numpy as np

from .spectral import (
    CASE_I,
    Grid1D,
    ModelParams,
    RealField,
    Regime,
    RegimeError,
    SpectralCoeffs,
    frac_disp_power,
    inverse_transform,
    lp_norm,
)

# 1/(4 sqrt(3) pi), the coefficient of every Gaussian-collapse reduction
GAUSS_CUBE_COEFF = 1.0 / (4.0 * np.sqrt(3.0) * np.pi)


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    """Fixed-order Gauss-Legendre panel rule with a doubling error check."""

    order: int = 64
    panel_count: int = 8
    abs_tol: float = 1e-10

    def __post_init__(self):
        if self.panel_count < 1:
            raise ValueError("panel_count must be >= 1")
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be positive")


@dataclass(frozen=True)
class ProfileRequest:
    """Inputs a profile constructor needs: parameters, moments, time, grid."""

    params: ModelParams
    mass: float
    first_moment: float
    duhamel_mass: float
    time: float
    grid: Grid1D

    def __post_init__(self):
        if self.time <= 0:
            raise ValueError("profile time must be positive")


def _panel_nodes(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    z, w = np.polynomial.legendre.leggauss(order)
    a = edges[:-1]
    h = np.diff(edges)
    nodes = (a[:, None] + 0.5 * h[:, None] * (z[None, :] + 1.0)).ravel()
    weights = (0.5 * h[:, None] * w[None, :]).ravel()
    return nodes, weights


def _integrate_checked(f, edges_of, quad: QuadratureSpec):
    """Integrate a vectorized integrand with a panel-doubling error estimate."""
    s1, w1 = _panel_nodes(edges_of(quad.panel_count), quad.order)
    s2, w2 = _panel_nodes(edges_of(2 * quad.panel_count), quad.order)
    coarse = f(s1) @ w1
    fine = f(s2) @ w2
    err = np.max(np.abs(fine - coarse))
    if err > quad.abs_tol:
        raise QuadratureError(
            f"quadrature error estimate {err:.3e} exceeds abs_tol {quad.abs_tol:.3e}"
        )
    return fine


# -- heat kernel and Gaussian-difference kernel -------------------------------

def heat_kernel(x, t: float, l: int = 0):
    """l-th spatial derivative of the heat kernel via the Hermite recurrence.

    d^l/dx^l G = (-1)^l (4t)^{-l/2} H_l(x / sqrt(4t)) G(x, t).
    """
    if t <= 0:
        raise ValueError(f"heat kernel needs t > 0, got {t}")
    if l < 0 or l > 6:
        raise ValueError(f"derivative order must lie in 0..6, got {l}")
    x = np.asarray(x, dtype=float)
    z = x / np.sqrt(4.0 * t)
    g = np.exp(-(z**2)) / np.sqrt(4.0 * np.pi * t)
    h_prev = np.ones_like(z)
    if l == 0:
        return h_prev * g
    h = 2.0 * z
    for j in range(1, l):
        h, h_prev = 2.0 * z * h - 2.0 * j * h_prev, h
    return (-1.0) ** l * (4.0 * t) ** (-0.5 * l) * h * g


def frac_heat_field(
    t: float, grid: Grid1D, alpha: float, k: int = 1, l: int = 0
) -> RealField:
    """(D^alpha d_x)^k d_x^l G(., t) built from exact spectral coefficients.

    Sampling G and applying the multipliers would amplify FFT roundoff by
    xi^{k(alpha+1)+l}, burying fields whose norms decay fast in t; writing
    the coefficients (|xi|^alpha i xi)^k (i xi)^l e^{-t xi^2}/sqrt(2 pi)
    directly keeps them accurate at all times.
    """
    if t <= 0:
        raise ValueError(f"field needs t > 0, got {t}")
    if k < 0 or l < 0:
        raise ValueError("multiplier powers must be nonnegative")
    xi = grid.xi
    coeffs = (
        (np.abs(xi) ** alpha * 1j * xi) ** k
        * (1j * xi) ** l
        * np.exp(-t * xi**2)
        / np.sqrt(2.0 * np.pi)
    )
    if (k + l) % 2 == 1:
        coeffs[grid.nyquist_index] = 0.0
    return inverse_transform(SpectralCoeffs(grid, coeffs), time=t)


def fstar(y):
    """Gaussian-difference kernel at unit scale; even, zero mean."""
    y = np.asarray(y, dtype=float)
    c = 1.0 / (8.0 * np.sqrt(np.pi**3))
    return c * np.exp(-0.75 * y**2) - c / np.sqrt(3.0) * np.exp(-0.25 * y**2)


def f_scaled(y, s: float):
    """Self-similar rescaling s^{-3/2} fstar(y / sqrt(s)) of the kernel."""
    if s <= 0:
        raise ValueError(f"scale must be positive, got {s}")
    y = np.asarray(y, dtype=float)
    return s ** (-1.5) * fstar(y / np.sqrt(s))


# -- second-profile quadratures -----------------------------------------------

def _psi_star_integrand(x: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Integrand of the unit-scale second profile: shape (len(x), len(s)).

    Value at (x, s): s^{-1} [dG/dx(x, 1-2s/3) - dG/dx(x, 1)].  The s -> 0
    limit is the removable value -(2/3) d^3G/dx^3(x, 1).
    """
    out = np.empty((x.size, s.size))
    base = heat_kernel(x, 1.0, 1)
    tiny = s < 1e-12
    for j, sj in enumerate(s):
        if tiny[j]:
            out[:, j] = -(2.0 / 3.0) * heat_kernel(x, 1.0, 3)
        else:
            out[:, j] = (heat_kernel(x, 1.0 - 2.0 * sj / 3.0, 1) - base) / sj
    return out


def psi_star(x, quad: QuadratureSpec | None = None):
    """Unit-scale second asymptotic profile (odd, zero mean)."""
    quad = quad or QuadratureSpec()
    x = np.atleast_1d(np.asarray(x, dtype=float))

    def integrand(s):
        return _psi_star_integrand(x, s)

    def edges(n):
        return np.linspace(0.0, 1.0, n + 1)

    vals = GAUSS_CUBE_COEFF * _integrate_checked(integrand, edges, quad)
    return vals if vals.size > 1 else float(vals[0])


def psi_field(request: ProfileRequest, quad: QuadratureSpec | None = None) -> RealField:
    """Self-similar profile t^{-1} psi_star(x / sqrt(t)) sampled on the grid."""
    t = request.time
    vals = psi_star(request.grid.x / np.sqrt(t), quad) / t
    return RealField(request.grid, vals, t)


def log_correction_field(request: ProfileRequest) -> RealField:
    """Sampled (log t) dG/dx(x, t) / (4 sqrt(3) pi); the caller scales by
    beta M^3 / 3 (equivalently beta M^3/(12 sqrt(3) pi) on the bare field)."""
    t = request.time
    vals = GAUSS_CUBE_COEFF * np.log(t) * heat_kernel(request.grid.x, t, 1)
    return RealField(request.grid, vals, t)


def duhamel_v_field(t: float, grid: Grid1D, quad: QuadratureSpec | None = None) -> RealField:
    """Heat Duhamel integral of the cubed kernel, via the collapsed 1-D form

        v(x, t) = c3 int_1^t tau^{-1} dG/dx(x, t - 2 tau/3) dtau.
    """
    if t <= 1:
        raise ValueError(f"the Duhamel integral starts at 1; need t > 1, got {t}")
    quad = quad or QuadratureSpec()
    x = grid.x

    def integrand(tau):
        out = np.empty((x.size, tau.size))
        for j, tj in enumerate(tau):
            out[:, j] = heat_kernel(x, t - 2.0 * tj / 3.0, 1) / tj
        return out

    def edges(n):
        return np.geomspace(1.0, t, n + 1)

    vals = GAUSS_CUBE_COEFF * _integrate_checked(integrand, edges, quad)
    return RealField(grid, vals, t)


def v_minus_log_term_rescaled(
    t: float, grid: Grid1D, quad: QuadratureSpec | None = None
) -> RealField:
    """Independent route to v - V through the self-similar identity

        (v - V)(x, t) = t^{-1} c3 int_{1/t}^1 s^{-1}
                        [dG/dz(z, 1 - 2s/3) - dG/dz(z, 1)] ds,  z = x/sqrt(t).
    """
    if t <= 1:
        raise ValueError(f"need t > 1, got {t}")
    quad = quad or QuadratureSpec()
    z = grid.x / np.sqrt(t)

    def integrand(s):
        return _psi_star_integrand(z, s)

    def edges(n):
        return np.geomspace(1.0 / t, 1.0, n + 1)

    vals = GAUSS_CUBE_COEFF * _integrate_checked(integrand, edges, quad) / t
    return RealField(grid, vals, t)


# -- regime classification and the linear expansion ---------------------------

def classify_alpha(alpha, tol: float = 1e-12) -> Regime:
    """Resolve the dispersion regime of alpha in (1, 3).

    Exact rationals (n+1)/n and floats within tol of one resolve to the
    resonant Case II(n); 2 < alpha < 3 is Case I; otherwise Case III(n) with
    the unique bracketing n.
    """
    exact = isinstance(alpha, Fraction)
    a = float(alpha)
    if not (1.0 < a < 3.0):
        raise ValueError(f"alpha must lie in (1, 3), got {alpha}")
    if exact:
        num, den = alpha.numerator, alpha.denominator
        if num == den + 1:
            return Regime("II", den)
    inv = 1.0 / (a - 1.0)
    n_res = int(round(inv))
    if n_res >= 1 and abs(a - (n_res + 1) / n_res) <= tol:
        return Regime("II", n_res)
    if a > 2.0:
        return CASE_I
    n = int(np.floor(inv))
    if not ((n + 2) / (n + 1) < a < (n + 1) / n):
        raise RegimeError(
            f"alpha = {alpha} sits at a regime boundary within tolerance but is "
            "not an exact resonance; classification is ambiguous"
        )
    return Regime("III", n)


def make_params(alpha, beta: float, tol: float = 1e-12) -> ModelParams:
    """Build ModelParams with the regime resolved; alpha may be float,
    Fraction, or rational text like '3/2'."""
    if isinstance(alpha, str):
        alpha = Fraction(alpha)
    regime = classify_alpha(alpha, tol)
    exact = alpha if isinstance(alpha, Fraction) else None
    return ModelParams(float(alpha), beta, regime, exact)


def _expansion_coeffs(request: ProfileRequest, mass_only: bool = False) -> np.ndarray:
    params = request.params
    grid = request.grid
    t = request.time
    xi = grid.xi
    sigma = t * np.abs(xi) ** params.alpha * (1j * xi)
    ghat = np.exp(-t * xi**2) / np.sqrt(2.0 * np.pi)
    m = 0.0 if mass_only else request.first_moment
    data_hat = (request.mass - m * (1j * xi)) * ghat

    regime = params.regime
    if regime.case == "I":
        upper = 0
    elif regime.case == "II":
        upper = regime.n - 1
    else:
        upper = regime.n

    poly = np.zeros_like(sigma)
    term = np.ones_like(sigma)
    for k in range(upper + 1):
        if k > 0:
            term = term * sigma / k
        poly = poly + term

    coeffs = poly * data_hat
    if regime.case == "II":
        n = regime.n
        coeffs = coeffs + request.mass / math.factorial(n) * sigma**n * ghat
    return coeffs


def expansion_field(request: ProfileRequest, mass_only: bool = False) -> RealField:
    """Regime-dependent linear asymptotic expansion, evaluated spectrally.

    Case I: M G - m dG/dx; Cases II/III add the fractional-dispersion
    correction terms (and the resonant extra term for Case II).  With
    mass_only the first-moment terms are dropped, matching the leading sums
    of the sharp-constant statements.
    """
    grid = request.grid
    coeffs = _expansion_coeffs(request, mass_only)
    phase_k = np.rint(np.fft.fftfreq(grid.point_count, d=1.0 / grid.point_count))
    phase = np.where(phase_k.astype(int) % 2 == 0, 1.0, -1.0)
    spec = coeffs * phase * np.sqrt(2.0 * np.pi) / grid.dx
    spec[grid.nyquist_index] = 0.0
    vals = np.fft.ifft(spec).real
    return RealField(grid, vals, request.time)


def limit_constants(
    request: ProfileRequest, p: float, quad: QuadratureSpec | None = None
) -> tuple[float, float]:
    """Limiting constants of the optimally scaled residual norms at t = 1.

    Returns (c_star, c_dagger): c_star omits the first moment, c_dagger
    includes it and, in the resonant Case II, subtracts the extra
    fractional-dispersion term.
    """
    quad = quad or QuadratureSpec()
    params = request.params
    grid = request.grid
    beta = params.beta
    dg = heat_kernel(grid.x, 1.0, 1)
    psi = (
        psi_star(grid.x, quad)
        if beta * request.mass != 0.0
        else np.zeros(grid.point_count)
    )
    nonlin = beta * request.mass**3 / 3.0 * psi
    star = RealField(grid, beta * request.duhamel_mass / 3.0 * dg + nonlin, 1.0)

    dag_vals = (request.first_moment + beta * request.duhamel_mass / 3.0) * dg + nonlin
    if params.regime.case == "II":
        n = params.regime.n
        g1 = RealField(grid, heat_kernel(grid.x, 1.0, 0), 1.0)
        extra = frac_disp_power(g1, n, params)
        dag_vals = dag_vals - request.mass / math.factorial(n) * extra.values
    dagger = RealField(grid, dag_vals, 1.0)
    return lp_norm(star, p), lp_norm(dagger, p)
