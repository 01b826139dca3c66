"""Moments of the data and the time-integrated nonlinear mass.

The nonlinear mass splits as a near-field part (integral of u^3 over the
unit time interval) and a far-field part (integral of u^3 minus the cubed
leading profile from 1 to infinity), truncated at T_max with a fitted
power-law tail estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profiles import GAUSS_CUBE_COEFF
from .spectral import RealField, tail_mass
from .solver import Trajectory


class TailMassError(ValueError):
    pass


@dataclass
class Moments:
    M: float
    m: float
    mathcal_M: float
    mathcal_M0: float
    mathcal_M1: float
    T_max: float
    tail_estimate: float | None
    tail_exponent: float | None = None


def compute_M_m(u0: RealField, tail_threshold: float = 1e-8) -> tuple[float, float]:
    """Mass and first moment of the data by rectangle-rule quadrature.

    The first moment is truncation-sensitive, so data leaking past |x| > L/2
    is rejected.
    """
    tm = tail_mass(u0)
    if tm > tail_threshold:
        raise TailMassError(
            f"tail mass {tm:.3e} exceeds {tail_threshold:.1e}; "
            "first moment would be unreliable on this grid"
        )
    dx = u0.grid.dx
    mass = float(np.sum(u0.values) * dx)
    first = float(np.sum(u0.grid.x * u0.values) * dx)
    return mass, first


def rho_field(u: RealField, M: float) -> RealField:
    """Pointwise u^3 minus the cubed leading profile at the field's time."""
    if u.time <= 0:
        raise ValueError("rho is defined for t > 0 only")
    from .profiles import heat_kernel

    g = heat_kernel(u.grid.x, u.time, 0)
    return RealField(u.grid, u.values**3 - (M * g) ** 3, u.time)


def _rho_integral(q_u3: float, M: float, tau: float) -> float:
    # integral of (M G)^3 over x collapses to M^3 / (4 sqrt(3) pi tau)
    return q_u3 - M**3 * GAUSS_CUBE_COEFF / tau


def compute_mathcal_M(
    traj: Trajectory, M: float, T_max: float, m: float = 0.0
) -> Moments:
    """Time-trapezoid evaluation of the nonlinear mass with tail extrapolation.

    The far-field integrand a(tau) = integral of rho over y is fitted as
    A tau^{-gamma} on the last decade; the fit is integrated over
    (T_max, infinity) to bound the truncation error.  A non-decaying fit
    leaves the tail estimate unavailable.
    """
    times = np.array([t for t, _ in traj.nonlinear_l1_series])
    q = np.array([v for _, v in traj.nonlinear_l1_series])
    if times.size < 3 or times[-1] < T_max - 1e-9:
        raise ValueError(f"trajectory does not cover [0, {T_max}]")

    early = times <= 1.0 + 1e-12
    if np.count_nonzero(early) < 2:
        raise ValueError("need snapshots on [0, 1] for the near-field part")
    m0 = float(np.trapezoid(q[early], times[early]))

    late = (times >= 1.0 - 1e-12) & (times <= T_max + 1e-9)
    t_late = times[late]
    a_late = np.array([_rho_integral(qi, M, ti) for qi, ti in zip(q[late], t_late)])
    m1 = float(np.trapezoid(a_late, t_late))

    tail_estimate = None
    gamma = None
    window = t_late >= T_max / 10.0
    t_fit = t_late[window]
    a_fit = np.abs(a_late[window])
    positive = a_fit > 0
    if np.count_nonzero(positive) >= 3:
        slope, intercept = np.polyfit(
            np.log(t_fit[positive]), np.log(a_fit[positive]), 1
        )
        gamma = -slope
        if gamma > 1.05:
            amp = np.exp(intercept)
            tail_estimate = float(amp * T_max ** (1.0 - gamma) / (gamma - 1.0))

    return Moments(
        M=M,
        m=m,
        mathcal_M=m0 + m1,
        mathcal_M0=m0,
        mathcal_M1=m1,
        T_max=T_max,
        tail_estimate=tail_estimate,
        tail_exponent=gamma,
    )
