"""Fixed-step integration of the auxiliary amplitude equation.

The amplitude rho(t) obeys

    rho'' + k(t) rho = 1 / rho**3,

integrated here as the augmented first-order system

    x1' = x2          (x1 = rho)
    x2' = 1/x1**3 - k(t) x1
    x3' = 1/x1**2     (x3 = accumulated phase omega_rho)

with classic fourth-order Runge-Kutta on a uniform grid.  Every stage
evaluation guards x1 against collapse below RHO_MIN, where the 1/rho**3
barrier would overwhelm a fixed step.  Dense output between grid points is
cubic Hermite, built from the stored states and the exact right-hand side,
so sampled values keep the solver's fourth-order accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, OutOfRange, RhoCollapse
from .freq import FrequencyProfile

#: collapse guard applied at every Runge-Kutta stage
RHO_MIN = 1e-8


class SolutionSample(NamedTuple):
    rho: "float | np.ndarray"
    rho_dot: "float | np.ndarray"
    omega_rho: "float | np.ndarray"


class ConvergenceReport(NamedTuple):
    """Observed Richardson order; ``exact`` flags a fixed point of the
    scheme where successive refinements agree to roundoff."""

    order: "float | None"
    exact: bool
    diffs: "tuple[float, float]"


@dataclass(frozen=True)
class ErmakovSolution:
    """Uniform-grid solution of the auxiliary system with dense output."""

    profile: FrequencyProfile
    t: np.ndarray
    rho: np.ndarray
    rho_dot: np.ndarray
    omega_rho: np.ndarray
    step: float

    @property
    def t0(self) -> float:
        return float(self.t[0])

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    @property
    def rho0(self) -> float:
        return float(self.rho[0])

    @property
    def rho_dot0(self) -> float:
        return float(self.rho_dot[0])

    def _k_grid(self) -> np.ndarray:
        return np.array([self.profile.k(float(ti)) for ti in self.t])

    def sample(self, t) -> SolutionSample:
        """Evaluate (rho, rho_dot, omega_rho) at scalar or array times.

        Uses cubic Hermite interpolation with derivatives taken from the
        governing equations, exact at grid points.  Times outside the solved
        interval raise OutOfRange.
        """
        t_arr = np.asarray(t, dtype=float)
        scalar = t_arr.ndim == 0
        tq = np.atleast_1d(t_arr)
        grid = self.t
        slack = 1e-9 * max(1.0, abs(grid[-1] - grid[0]))
        if np.any(tq < grid[0] - slack) or np.any(tq > grid[-1] + slack):
            raise OutOfRange(
                f"sample times outside [{grid[0]!r}, {grid[-1]!r}]"
            )
        tq = np.clip(tq, grid[0], grid[-1])
        i = np.clip(np.searchsorted(grid, tq, side="right") - 1, 0, len(grid) - 2)
        h = grid[i + 1] - grid[i]
        s = (tq - grid[i]) / h

        k_grid = self._k_grid()
        rho, rho_dot = self.rho, self.rho_dot
        # nodal derivatives of each interpolated quantity
        d_rho = rho_dot
        d_rho_dot = 1.0 / rho**3 - k_grid * rho
        d_omega = 1.0 / rho**2

        s2 = s * s
        s3 = s2 * s
        h00 = 2.0 * s3 - 3.0 * s2 + 1.0
        h10 = s3 - 2.0 * s2 + s
        h01 = -2.0 * s3 + 3.0 * s2
        h11 = s3 - s2

        def hermite(y, dy):
            return (
                h00 * y[i]
                + h10 * h * dy[i]
                + h01 * y[i + 1]
                + h11 * h * dy[i + 1]
            )

        out = SolutionSample(
            hermite(rho, d_rho),
            hermite(rho_dot, d_rho_dot),
            hermite(self.omega_rho, d_omega),
        )
        if scalar:
            return SolutionSample(*(float(v[0]) for v in out))
        return out


def _rhs(profile: FrequencyProfile, t: float, x1: float, x2: float):
    if x1 < RHO_MIN:
        raise RhoCollapse(
            f"rho = {float(x1)!r} fell below {RHO_MIN!r} at t = {float(t)!r}"
        )
    inv2 = 1.0 / (x1 * x1)
    return x2, inv2 * inv2 * x1 - profile.k(t) * x1, inv2


def solve(
    profile: FrequencyProfile,
    rho0: float,
    rho_dot0: float,
    t_end: float,
    step: float = 1e-3,
    t0: float = 0.0,
    method: str = "rk4",
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> ErmakovSolution:
    """Integrate the auxiliary system from t0 to t_end.

    Parameters
    ----------
    profile : FrequencyProfile
        Supplies k(t).
    rho0, rho_dot0 : float
        Initial amplitude and its rate; rho0 must exceed RHO_MIN.
    t_end : float
        Absolute final time, > t0.
    step : float
        Nominal grid spacing; the actual spacing divides t_end - t0 evenly
        and is stored on the returned solution.
    t0 : float
        Start time (omega_rho is accumulated from 0 at t0).
    method : str
        "rk4" (fixed step, default) or "rk45" (adaptive, resampled onto the
        uniform grid; rtol/atol apply).
    """
    rho0 = float(rho0)
    rho_dot0 = float(rho_dot0)
    t0 = float(t0)
    t_end = float(t_end)
    step = float(step)
    if not math.isfinite(rho0) or not math.isfinite(rho_dot0):
        raise ConfigError("initial data must be finite")
    if rho0 < RHO_MIN:
        raise RhoCollapse(f"initial rho = {rho0!r} is below {RHO_MIN!r}")
    if not t_end > t0:
        raise ConfigError(f"t_end ({t_end!r}) must exceed t0 ({t0!r})")
    if not step > 0:
        raise ConfigError(f"step must be positive, got {step!r}")
    if method not in ("rk4", "rk45"):
        raise ConfigError(f"unknown method {method!r}")

    span = t_end - t0
    n = max(1, round(span / step))
    grid = np.linspace(t0, t_end, n + 1)
    h = span / n

    if method == "rk45":
        return _solve_adaptive(profile, rho0, rho_dot0, grid, h, rtol, atol)

    rho = np.empty(n + 1)
    rho_dot = np.empty(n + 1)
    omega = np.empty(n + 1)
    x1, x2, x3 = rho0, rho_dot0, 0.0
    rho[0], rho_dot[0], omega[0] = x1, x2, x3
    half = 0.5 * h
    sixth = h / 6.0
    for i in range(n):
        t = grid[i]
        a1, b1, c1 = _rhs(profile, t, x1, x2)
        a2, b2, c2 = _rhs(profile, t + half, x1 + half * a1, x2 + half * b1)
        a3, b3, c3 = _rhs(profile, t + half, x1 + half * a2, x2 + half * b2)
        a4, b4, c4 = _rhs(profile, t + h, x1 + h * a3, x2 + h * b3)
        x1 += sixth * (a1 + 2.0 * (a2 + a3) + a4)
        x2 += sixth * (b1 + 2.0 * (b2 + b3) + b4)
        x3 += sixth * (c1 + 2.0 * (c2 + c3) + c4)
        if x1 < RHO_MIN:
            raise RhoCollapse(
                f"rho = {float(x1)!r} fell below {RHO_MIN!r} "
                f"at t = {float(grid[i + 1])!r}"
            )
        rho[i + 1], rho_dot[i + 1], omega[i + 1] = x1, x2, x3

    return ErmakovSolution(profile, grid, rho, rho_dot, omega, h)


def _solve_adaptive(profile, rho0, rho_dot0, grid, h, rtol, atol):
    from scipy.integrate import solve_ivp

    def fun(t, y):
        return _rhs(profile, t, y[0], y[1])

    def collapse(t, y):
        return y[0] - RHO_MIN

    collapse.terminal = True
    collapse.direction = -1.0

    res = solve_ivp(
        fun,
        (grid[0], grid[-1]),
        (rho0, rho_dot0, 0.0),
        method="RK45",
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=collapse,
    )
    if res.t_events[0].size:
        raise RhoCollapse(
            f"rho fell below {RHO_MIN!r} at t = {float(res.t_events[0][0])!r}"
        )
    if not res.success:
        raise ConfigError(f"adaptive integration failed: {res.message}")
    y = res.sol(grid)
    return ErmakovSolution(profile, grid, y[0], y[1], y[2], h)


def convergence_order(
    profile: FrequencyProfile,
    rho0: float,
    rho_dot0: float,
    t_end: float,
    step: float = 0.02,
    t0: float = 0.0,
) -> ConvergenceReport:
    """Observed order of the fixed-step scheme by Richardson refinement.

    Solves at step, step/2, step/4 and compares rho(t_end).  Returns the
    log2 ratio of successive differences (close to 4 for smooth profiles),
    or exact=True with order None when the differences sit at roundoff,
    which happens at fixed points of the flow.
    """
    vals = []
    for refine in (1, 2, 4):
        sol = solve(profile, rho0, rho_dot0, t_end, step / refine, t0)
        vals.append(sol.rho[-1])
    d1 = abs(vals[0] - vals[1])
    d2 = abs(vals[1] - vals[2])
    floor = 1e-13 * max(1.0, abs(vals[2]))
    if d1 < floor and d2 < floor:
        return ConvergenceReport(None, True, (d1, d2))
    if d2 == 0.0:
        return ConvergenceReport(math.inf, False, (d1, d2))
    return ConvergenceReport(math.log2(d1 / d2), False, (d1, d2))
