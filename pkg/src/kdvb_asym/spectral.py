"""Grids, Fourier transforms and multiplier operators on a truncated line.

The real line is approximated by the periodic interval [-L, L).  The
transform pair follows the symmetric convention

    fhat(xi) = (1/sqrt(2 pi)) int e^{-i x xi} f(x) dx,

realised discretely by the rectangle rule, so coefficients approximate the
continuum Fourier transform at xi_k = pi k / L.  With this normalization the
discrete Parseval identity reads  sum |f_j|^2 dx = sum |c_k|^2 (pi/L).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class GridError(ValueError):
    pass


class RegimeError(ValueError):
    pass


@dataclass(frozen=True)
class Regime:
    """Dispersion regime: 'I' (2 < alpha < 3), 'II' (alpha = (n+1)/n, resonant)
    or 'III' ((n+2)/(n+1) < alpha < (n+1)/n)."""

    case: str
    n: int | None = None

    def __post_init__(self):
        if self.case not in ("I", "II", "III"):
            raise RegimeError(f"unknown regime case {self.case!r}")
        if self.case == "I" and self.n is not None:
            raise RegimeError("Case I carries no index")
        if self.case in ("II", "III") and (self.n is None or self.n < 1):
            raise RegimeError(f"Case {self.case} needs an index n >= 1")


CASE_I = Regime("I")


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [-L, L) with matched FFT-ordered wavenumbers pi*k/L."""

    half_width: float
    point_count: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise GridError(f"half_width must be positive, got {self.half_width}")
        if self.point_count % 2 != 0 or self.point_count < 16:
            raise GridError(
                f"point_count must be even and >= 16, got {self.point_count}"
            )

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.point_count

    @property
    def x(self) -> np.ndarray:
        return -self.half_width + self.dx * np.arange(self.point_count)

    @property
    def xi(self) -> np.ndarray:
        """Wavenumbers in FFT order; the single Nyquist mode is -N/2."""
        n = self.point_count
        k = np.fft.fftfreq(n, d=1.0 / n)
        return np.pi * k / self.half_width

    @property
    def nyquist_index(self) -> int:
        return self.point_count // 2


def make_grid(half_width: float, point_count: int) -> Grid1D:
    return Grid1D(half_width, point_count)


@dataclass
class RealField:
    """Real samples of a function on a Grid1D at a fixed time stamp."""

    grid: Grid1D
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.point_count,):
            raise GridError(
                f"values shape {self.values.shape} does not match grid size "
                f"{self.grid.point_count}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")
        if self.time < 0:
            raise ValueError("time stamp must be nonnegative")

    def mean(self) -> float:
        """Discrete integral mean (1/2L) * sum(values) * dx."""
        return float(np.mean(self.values))

    def mass(self) -> float:
        """Rectangle-rule integral of the field over the domain."""
        return float(np.sum(self.values) * self.grid.dx)


@dataclass
class SpectralCoeffs:
    """Continuum-normalized Fourier coefficients, FFT mode ordering."""

    grid: Grid1D
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (self.grid.point_count,):
            raise GridError("coefficient count does not match grid")


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: alpha in (1,3), beta, and the resolved regime."""

    alpha: float
    beta: float
    regime: Regime
    alpha_exact: Fraction | None = None

    def __post_init__(self):
        if not (1.0 < self.alpha < 3.0):
            raise ValueError(f"alpha must lie in (1, 3), got {self.alpha}")
        if self.regime.case == "I" and not (2.0 < self.alpha < 3.0):
            raise RegimeError(f"Case I requires 2 < alpha < 3, got {self.alpha}")
        if self.regime.case == "II":
            n = self.regime.n
            if abs(self.alpha - (n + 1) / n) > 1e-9:
                raise RegimeError(
                    f"Case II({n}) requires alpha = {(n + 1)}/{n}, got {self.alpha}"
                )
        if self.regime.case == "III":
            n = self.regime.n
            if not ((n + 2) / (n + 1) < self.alpha < (n + 1) / n):
                raise RegimeError(
                    f"Case III({n}) requires ({n + 2})/({n + 1}) < alpha < "
                    f"({n + 1})/{n}, got {self.alpha}"
                )


# -- transforms ---------------------------------------------------------------

def _phase(grid: Grid1D) -> np.ndarray:
    # e^{-i xi_k x_0} = (-1)^k shifts the FFT origin from x=0 to x=-L
    k = np.rint(np.fft.fftfreq(grid.point_count, d=1.0 / grid.point_count))
    return np.where(k.astype(int) % 2 == 0, 1.0, -1.0)


def transform(f: RealField) -> SpectralCoeffs:
    c = f.grid.dx / np.sqrt(2.0 * np.pi) * _phase(f.grid) * np.fft.fft(f.values)
    return SpectralCoeffs(f.grid, c)


def inverse_transform(c: SpectralCoeffs, time: float = 0.0) -> RealField:
    vals = np.fft.ifft(c.coeffs * _phase(c.grid)) * np.sqrt(2.0 * np.pi) / c.grid.dx
    return RealField(c.grid, vals.real, time)


def _check_same_grid(a: Grid1D, b: Grid1D) -> None:
    if a != b:
        raise GridError("grid mismatch")


def dispersion_symbol(grid: Grid1D, alpha: float) -> np.ndarray:
    """Odd symbol |xi|^alpha * (i xi); the xi=0 value is the continuous limit 0."""
    xi = grid.xi
    return np.abs(xi) ** alpha * (1j * xi)


def apply_multiplier(
    f: RealField, symbol: np.ndarray, zero_nyquist: bool = False,
    time: float | None = None,
) -> RealField:
    spec = np.fft.fft(f.values) * symbol
    if zero_nyquist:
        spec[f.grid.nyquist_index] = 0.0
    out = np.fft.ifft(spec).real
    return RealField(f.grid, out, f.time if time is None else time)


def apply_semigroup(f: RealField, t: float, params: ModelParams) -> RealField:
    """Convolution with the linear propagator, multiplier e^{-t xi^2 + i t |xi|^a xi}."""
    if t < 0:
        raise ValueError(f"semigroup time must be nonnegative, got {t}")
    if t == 0:
        return RealField(f.grid, f.values.copy(), f.time)
    xi = f.grid.xi
    symbol = np.exp(-t * xi**2 + t * dispersion_symbol(f.grid, params.alpha))
    return apply_multiplier(f, symbol, zero_nyquist=True, time=f.time + t)


def frac_disp_power(f: RealField, k: int, params: ModelParams) -> RealField:
    """k-fold application of the fractional-dispersion operator (symbol |xi|^a i xi)^k."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    if k == 0:
        return RealField(f.grid, f.values.copy(), f.time)
    symbol = dispersion_symbol(f.grid, params.alpha) ** k
    return apply_multiplier(f, symbol, zero_nyquist=(k % 2 == 1))


def spatial_derivative(f: RealField, l: int) -> RealField:
    if l < 0:
        raise ValueError("derivative order must be nonnegative")
    if l == 0:
        return RealField(f.grid, f.values.copy(), f.time)
    symbol = (1j * f.grid.xi) ** l
    return apply_multiplier(f, symbol, zero_nyquist=(l % 2 == 1))


# -- norms and diagnostics ----------------------------------------------------

def lp_norm(f: RealField, p: float) -> float:
    """Rectangle-rule L^p norm; p = inf uses the grid maximum."""
    if p == np.inf:
        return float(np.max(np.abs(f.values)))
    if p < 1:
        raise ValueError(f"p must lie in [1, inf], got {p}")
    return float((np.sum(np.abs(f.values) ** p) * f.grid.dx) ** (1.0 / p))


def h1_l1_size(f: RealField) -> float:
    """||f||_{H^1} + ||f||_{L^1}, the smallness functional of the global theory."""
    fx = spatial_derivative(f, 1)
    h1 = np.sqrt(lp_norm(f, 2) ** 2 + lp_norm(fx, 2) ** 2)
    return h1 + lp_norm(f, 1)


def tail_mass(f: RealField) -> float:
    """Absolute L^1 mass carried outside |x| > L/2; periodization monitor."""
    outer = np.abs(f.grid.x) > 0.5 * f.grid.half_width
    return float(np.sum(np.abs(f.values[outer])) * f.grid.dx)
