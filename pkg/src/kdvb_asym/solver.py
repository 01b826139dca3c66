"""Pseudospectral time integration of the full nonlinear problem.

The linear part is treated exactly through an integrating factor (classical
RK4 on the transformed variable), so the stiff diffusive and dispersive
symbols never enter the stability constraint.  The cubic flux is evaluated
on a zero-padded grid (default 2x) which removes aliasing from triple
products exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from .spectral import (
    Grid1D,
    GridError,
    ModelParams,
    RealField,
    apply_semigroup,
    h1_l1_size,
)


class BlowUpError(RuntimeError):
    """Non-finite values appeared during the evolution."""

    def __init__(self, last_good_time: float):
        super().__init__(f"solution blew up; last finite state at t = {last_good_time}")
        self.last_good_time = last_good_time


@dataclass
class SolverConfig:
    params: ModelParams
    grid: Grid1D
    t_end: float
    snapshot_times: list[float]
    dt: float | None = None
    dealias_factor: float = 2.0
    smallness_threshold: float = 0.5

    def __post_init__(self):
        if self.dt is None:
            # advective heuristic, capped; the linear part is exact
            self.dt = min(0.5 * self.grid.dx, 0.05)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.dealias_factor < 1.5:
            raise ValueError("dealias factor must be >= 3/2")
        self.snapshot_times = sorted(float(t) for t in self.snapshot_times)
        if self.snapshot_times and (
            self.snapshot_times[0] < 0 or self.snapshot_times[-1] > self.t_end + 1e-12
        ):
            raise ValueError("snapshot times must lie in [0, t_end]")


@dataclass
class Trajectory:
    config: SolverConfig
    snapshot_times: list[float]
    snapshots: list[RealField]
    conserved_mass_series: list[float] = field(default_factory=list)
    nonlinear_l1_series: list[tuple[float, float]] = field(default_factory=list)

    def snapshot_at(self, t: float) -> RealField:
        for ts, snap in zip(self.snapshot_times, self.snapshots):
            if abs(ts - t) <= 1e-9 * max(1.0, abs(t)):
                return snap
        raise KeyError(f"no snapshot stored at t = {t}")


def _dealiased_cube_r(uhat_r: np.ndarray, n: int, factor: float) -> np.ndarray:
    """rFFT of u^3 with zero padding; uhat_r is a raw (unnormalized) rFFT array."""
    nbig = int(np.ceil(factor * n / 2)) * 2
    big = np.zeros(nbig // 2 + 1, dtype=complex)
    big[: n // 2 + 1] = uhat_r
    big[n // 2] = 0.0  # unpaired Nyquist mode stays out of products
    u = sfft.irfft(big * (nbig / n), nbig)
    cube_hat = sfft.rfft(u**3) * (n / nbig)
    return cube_hat[: n // 2 + 1]


class _Stepper:
    """Integrating-factor classical RK4 on the raw rFFT state."""

    def __init__(self, config: SolverConfig):
        grid = config.grid
        params = config.params
        self.config = config
        self.n = grid.point_count
        xi = grid.xi[: self.n // 2 + 1].copy()
        xi[-1] = -xi[-1]  # rFFT keeps the Nyquist wavenumber with + sign
        lam = -(xi**2) + np.abs(xi) ** params.alpha * (1j * xi)
        lam[-1] = lam[-1].real  # odd symbol has no partner at Nyquist
        self.lam = lam
        self.ikxi = 1j * xi
        self.beta = params.beta
        self._exp_cache: dict[float, tuple[np.ndarray, np.ndarray]] = {}

    def _exps(self, dt: float) -> tuple[np.ndarray, np.ndarray]:
        cached = self._exp_cache.get(dt)
        if cached is None:
            cached = (np.exp(0.5 * dt * self.lam), np.exp(dt * self.lam))
            if len(self._exp_cache) > 8:
                self._exp_cache.clear()
            self._exp_cache[dt] = cached
        return cached

    def nonlinear(self, uhat: np.ndarray) -> np.ndarray:
        if self.beta == 0.0:
            return np.zeros_like(uhat)
        out = -(self.beta / 3.0) * self.ikxi * _dealiased_cube_r(
            uhat, self.n, self.config.dealias_factor
        )
        out[-1] = 0.0
        return out

    def step(self, uhat: np.ndarray, dt: float) -> np.ndarray:
        e_half, e_full = self._exps(dt)
        k1 = self.nonlinear(uhat)
        u_half = e_half * uhat
        k2 = self.nonlinear(u_half + 0.5 * dt * e_half * k1)
        k3 = self.nonlinear(u_half + 0.5 * dt * k2)
        k4 = self.nonlinear(e_full * uhat + dt * e_half * k3)
        return e_full * uhat + (dt / 6.0) * (
            e_full * k1 + 2.0 * e_half * (k2 + k3) + k4
        )


def nonlinear_rhs(f: RealField, params: ModelParams, dealias_factor: float = 2.0) -> RealField:
    """-(beta/3) d/dx(u^3), the conservation-law form of the cubic flux."""
    config = SolverConfig(
        params, f.grid, t_end=1.0, snapshot_times=[], dealias_factor=dealias_factor
    )
    stepper = _Stepper(config)
    rhs_hat = stepper.nonlinear(sfft.rfft(f.values))
    return RealField(f.grid, sfft.irfft(rhs_hat, f.grid.point_count), f.time)


def evolve(u0: RealField, config: SolverConfig) -> Trajectory:
    """Time-step the integral-equation dynamics and record snapshots."""
    if u0.grid != config.grid:
        raise GridError("initial data grid does not match solver grid")
    size = h1_l1_size(u0)
    if size > config.smallness_threshold:
        warnings.warn(
            f"initial data size {size:.3g} exceeds the smallness threshold "
            f"{config.smallness_threshold}; the decay theory may not apply",
            stacklevel=2,
        )

    stepper = _Stepper(config)
    dx = config.grid.dx
    n = config.grid.point_count
    uhat = sfft.rfft(u0.values)
    t = 0.0
    traj = Trajectory(config, [], [])

    def record(time: float, state: np.ndarray) -> None:
        vals = sfft.irfft(state, n)
        if not np.all(np.isfinite(vals)):
            raise BlowUpError(traj.snapshot_times[-1] if traj.snapshot_times else 0.0)
        snap = RealField(config.grid, vals, time)
        traj.snapshot_times.append(time)
        traj.snapshots.append(snap)
        traj.conserved_mass_series.append(snap.mass())
        traj.nonlinear_l1_series.append((time, float(np.sum(vals**3) * dx)))

    for target in config.snapshot_times:
        if target <= t + 1e-13:
            record(target, uhat)
            continue
        n_full = int(np.floor((target - t) / config.dt * (1.0 - 1e-12)))
        for _ in range(n_full):
            uhat = stepper.step(uhat, config.dt)
        t += n_full * config.dt
        rem = target - t
        if rem > 1e-13:
            uhat = stepper.step(uhat, rem)
        t = target
        if not np.isfinite(np.abs(uhat[0])) or not np.all(np.isfinite(uhat.real)):
            raise BlowUpError(traj.snapshot_times[-1] if traj.snapshot_times else 0.0)
        record(target, uhat)
    return traj


def duhamel_term(traj: Trajectory, u0: RealField, t: float) -> RealField:
    """Nonlinear contribution at a snapshot time, via u(t) - S(t)*u0.

    Exact to solver accuracy; avoids re-quadrature of the time integral.
    """
    snap = traj.snapshot_at(t)
    linear = apply_semigroup(u0, t, traj.config.params)
    return RealField(snap.grid, snap.values - linear.values, t)
