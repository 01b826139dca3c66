"""Residuals of the asymptotic expansions, decay series and rate fitting.

Each residual combines a solver (or semigroup) output with the profile
constructors; the scaled norms operationalize the limit statements
t^{(1/2)(1-1/p)+1/2} ||...|| -> 0 as finite-time decay series whose log-log
slopes are fitted and compared with the theoretical exponents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .observables import Moments
from .profiles import (
    GAUSS_CUBE_COEFF,
    ProfileRequest,
    QuadratureSpec,
    expansion_field,
    heat_kernel,
    psi_field,
)
from .solver import Trajectory, duhamel_term
from .spectral import ModelParams, RealField, apply_semigroup, lp_norm


def scale_exponent(p: float) -> float:
    """The optimal scaling exponent (1/2)(1 - 1/p) + 1/2 of the decay-limit statements."""
    inv_p = 0.0 if p == np.inf else 1.0 / p
    return 0.5 * (1.0 - inv_p) + 0.5


@dataclass
class DecaySeries:
    label: str
    p: float
    samples: list[tuple[float, float]]
    scale_exponent: float = 0.0
    log_factor: str = "none"  # or "divide_by_log_t"

    def __post_init__(self):
        times = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("sample times must be strictly increasing")
        if self.log_factor not in ("none", "divide_by_log_t"):
            raise ValueError(f"unknown log factor {self.log_factor!r}")

    def scaled_values(self) -> list[tuple[float, float]]:
        out = []
        for t, v in self.samples:
            s = t**self.scale_exponent * v
            if self.log_factor == "divide_by_log_t":
                s /= np.log(t)
            out.append((t, s))
        return out


@dataclass
class RateFit:
    slope: float
    intercept: float
    fit_residual: float
    window: tuple[float, float]


def _profile_request(moments: Moments, params: ModelParams, t: float, grid) -> ProfileRequest:
    return ProfileRequest(
        params=params,
        mass=moments.M,
        first_moment=moments.m,
        duhamel_mass=moments.mathcal_M,
        time=t,
        grid=grid,
    )


def _correction_values(
    moments: Moments, params: ModelParams, t: float, grid,
    quad: QuadratureSpec | None,
) -> np.ndarray:
    """(beta M^3/(12 sqrt3 pi)) log t dG + (beta MM/3) dG + (beta M^3/3) Psi."""
    beta = params.beta
    dg = heat_kernel(grid.x, t, 1)
    vals = (
        beta * moments.M**3 / 3.0 * GAUSS_CUBE_COEFF * np.log(t) * dg
        + beta * moments.mathcal_M / 3.0 * dg
    )
    if beta * moments.M != 0.0:
        req = _profile_request(moments, params, t, grid)
        vals = vals + beta * moments.M**3 / 3.0 * psi_field(req, quad).values
    return vals


def residual_duhamel_field(
    traj: Trajectory, u0: RealField, moments: Moments, params: ModelParams,
    t: float, quad: QuadratureSpec | None = None,
) -> RealField:
    """Duhamel term plus its full second-order profile correction."""
    if t <= 1:
        raise ValueError("the Duhamel residual needs t > 1")
    duh = duhamel_term(traj, u0, t)
    vals = duh.values + _correction_values(moments, params, t, duh.grid, quad)
    return RealField(duh.grid, vals, t)


def residual_duhamel(
    traj: Trajectory, u0: RealField, moments: Moments, params: ModelParams,
    t: float, p: float, quad: QuadratureSpec | None = None,
) -> float:
    return lp_norm(residual_duhamel_field(traj, u0, moments, params, t, quad), p)


def residual_first_order(
    traj: Trajectory, u0: RealField, moments: Moments, params: ModelParams,
    t: float, p: float,
) -> float:
    """First-order residual: u - S(t)*u0 + log-correction term only."""
    snap = traj.snapshot_at(t)
    linear = apply_semigroup(u0, t, params)
    beta = params.beta
    log_term = (
        beta * moments.M**3 / 3.0 * GAUSS_CUBE_COEFF * np.log(t)
        * heat_kernel(snap.grid.x, t, 1)
    )
    vals = snap.values - linear.values + log_term
    return lp_norm(RealField(snap.grid, vals, t), p)


def residual_corollary(
    traj: Trajectory, u0: RealField, moments: Moments, params: ModelParams,
    t: float, p: float, quad: QuadratureSpec | None = None,
) -> float:
    """Residual of the full higher-order expansion for the matching regime."""
    snap = traj.snapshot_at(t)
    req = _profile_request(moments, params, t, snap.grid)
    expansion = expansion_field(req)
    vals = (
        snap.values
        - expansion.values
        + _correction_values(moments, params, t, snap.grid, quad)
    )
    return lp_norm(RealField(snap.grid, vals, t), p)


def reduced_limit_value(
    traj: Trajectory, u0: RealField, moments: Moments, params: ModelParams,
    t: float, p: float,
) -> float:
    """Optimally scaled norm whose limit is the sharp constant.

    Subtracts only the mass part of the regime expansion and the log
    correction, then scales by t^{(1/2)(1-1/p)+1/2}.
    """
    snap = traj.snapshot_at(t)
    req = _profile_request(moments, params, t, snap.grid)
    leading = expansion_field(req, mass_only=True)
    beta = params.beta
    log_term = (
        beta * moments.M**3 / 3.0 * GAUSS_CUBE_COEFF * np.log(t)
        * heat_kernel(snap.grid.x, t, 1)
    )
    vals = snap.values - leading.values + log_term
    raw = lp_norm(RealField(snap.grid, vals, t), p)
    return t ** scale_exponent(p) * raw


def collect_series(
    evaluator, times, p: float, scale_exp: float = 0.0,
    log_factor: str = "none", label: str = "",
) -> DecaySeries:
    """Evaluate a (t, p) -> norm callable over times into a DecaySeries."""
    samples = [(float(t), float(evaluator(t, p))) for t in times]
    return DecaySeries(label, p, samples, scale_exp, log_factor)


def rate_fit(series: DecaySeries, window: tuple[float, float] | None = None) -> RateFit:
    """Least-squares slope in (log t, log value); nonpositive values excluded."""
    times = np.array([t for t, _ in series.samples])
    vals = np.array([v for _, v in series.samples])
    if window is None:
        window = (times[-1] / 10.0, times[-1])
    lo, hi = window
    keep = (times >= lo) & (times <= hi) & (vals > 0)
    if np.count_nonzero(keep) < 5:
        raise ValueError("rate fit needs at least 5 positive samples in the window")
    t_fit = times[keep]
    v_fit = vals[keep]
    if series.log_factor == "divide_by_log_t":
        v_fit = v_fit / np.log(t_fit)
    lt, lv = np.log(t_fit), np.log(v_fit)
    slope, intercept = np.polyfit(lt, lv, 1)
    resid = float(np.sqrt(np.mean((lv - (slope * lt + intercept)) ** 2)))
    return RateFit(float(slope), float(intercept), resid, (float(lo), float(hi)))
