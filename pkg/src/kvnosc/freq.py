"""Time-dependent spring "constants" k(t) and their closed-form companions.

A profile supplies k(t) for the parametric oscillator x'' + k(t) x = 0.  For
two special profiles a positive solution u(t) of the linear equation is known
in closed form together with its accumulated phase

    omega_u(t) = integral dt' / u(t')**2,

and the pair (u, omega_u) yields an exact auxiliary amplitude

    rho(t) = u(t) * sqrt(1 + omega_u(t)**2)

satisfying the nonlinear auxiliary equation rho'' + k(t) rho = 1 / rho**3.
The raw phase atan(omega_u) is what the propagator consumes; differences of
it are branch-consistent rotation angles.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ConfigError, DomainError, ExtrapolationError, UnsupportedProfile


class LinearModeSolution(NamedTuple):
    """Closed-form solution sample of u'' + k(t) u = 0."""

    u: float
    u_dot: float
    omega_u: float


class AuxiliarySample(NamedTuple):
    """Closed-form sample (rho, rho_dot, raw phase) of the auxiliary flow."""

    rho: float
    rho_dot: float
    omega_raw: float


@dataclass(frozen=True)
class FrequencyProfile:
    """Base class; concrete profiles implement ``k``."""

    #: whether analytic_u / analytic_rho are implemented
    analytic_available = False

    def k(self, t: float) -> float:
        raise NotImplementedError

    def _analytic_u(self, t: float) -> LinearModeSolution:
        raise UnsupportedProfile(
            f"no closed-form linear mode for {type(self).__name__}"
        )


@dataclass(frozen=True)
class Hyperbolic(FrequencyProfile):
    """Transient pulse k(t) = 2 beta^2 / cosh(beta t)^2.

    The closed-form mode is u = tanh(beta t) with accumulated phase
    t - coth(beta t)/beta; both are restricted to t >= 0 where u > 0.
    The amplitude rho is evaluated through the cancellation-free rewrite

        rho = sqrt(tanh(w)^2 + (w tanh(w) - 1)^2 / beta^2),  w = beta t,

    which is exact down to t = 0 where rho -> 1/beta, rho_dot -> 0.
    """

    beta: float

    analytic_available = True

    def __post_init__(self):
        if not self.beta > 0:
            raise ConfigError(f"beta must be positive, got {self.beta!r}")

    def k(self, t: float) -> float:
        return 2.0 * self.beta**2 / math.cosh(self.beta * t) ** 2

    def _analytic_u(self, t: float) -> LinearModeSolution:
        if t < 0:
            raise DomainError(f"closed form requires t >= 0, got {t!r}")
        b = self.beta
        th = math.tanh(b * t)
        u_dot = b * (1.0 - th * th)
        omega_u = -math.inf if t == 0 else t - 1.0 / (b * th)
        return LinearModeSolution(th, u_dot, omega_u)

    def _analytic_rho(self, t: float) -> AuxiliarySample:
        if t < 0:
            raise DomainError(f"closed form requires t >= 0, got {t!r}")
        b = self.beta
        w = b * t
        th = math.tanh(w)
        sech2 = 1.0 - th * th
        g = w * th - 1.0
        rho = math.sqrt(th * th + g * g / b**2)
        drho2_dw = 2.0 * th * sech2 + 2.0 * g * (th + w * sech2) / b**2
        rho_dot = b * drho2_dw / (2.0 * rho)
        omega_raw = -0.5 * math.pi if t == 0 else math.atan(t - 1.0 / (b * th))
        return AuxiliarySample(rho, rho_dot, omega_raw)


@dataclass(frozen=True)
class InverseQuadratic(FrequencyProfile):
    """Decaying profile k(t) = 1 / (gamma + 2 t)^2.

    The closed-form mode is u = sqrt(gamma + 2 t) with phase
    ln(gamma + 2 t) / 2, valid wherever gamma + 2 t > 0.
    """

    gamma: float

    analytic_available = True

    def __post_init__(self):
        if not self.gamma > 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma!r}")

    def _s(self, t: float) -> float:
        s = self.gamma + 2.0 * t
        if s <= 0:
            raise DomainError(f"gamma + 2 t must stay positive, got {s!r} at t={t!r}")
        return s

    def k(self, t: float) -> float:
        return 1.0 / self._s(t) ** 2

    def _analytic_u(self, t: float) -> LinearModeSolution:
        s = self._s(t)
        root = math.sqrt(s)
        return LinearModeSolution(root, 1.0 / root, 0.5 * math.log(s))

    def _analytic_rho(self, t: float) -> AuxiliarySample:
        s = self._s(t)
        half_log = 0.5 * math.log(s)
        rho = math.sqrt(s * (1.0 + half_log * half_log))
        rho_dot = (1.0 + half_log + half_log * half_log) / rho
        return AuxiliarySample(rho, rho_dot, math.atan(half_log))


@dataclass(frozen=True)
class Oscillatory(FrequencyProfile):
    """Modulated profile k(t) = delta + cos(omega t); no closed form."""

    delta: float
    omega: float

    def k(self, t: float) -> float:
        return self.delta + math.cos(self.omega * t)


@dataclass(frozen=True)
class Constant(FrequencyProfile):
    """Time-independent k(t) = k0."""

    k0: float

    def k(self, t: float) -> float:
        return self.k0


@dataclass(frozen=True)
class Tabulated(FrequencyProfile):
    """Piecewise-linear interpolation through (times, values) knots.

    Evaluation outside [times[0], times[-1]] raises ExtrapolationError;
    silent extrapolation of a measured profile is never meaningful.
    """

    times: tuple
    values: tuple

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        values = tuple(float(v) for v in self.values)
        if len(times) != len(values):
            raise ConfigError("times and values must have equal length")
        if len(times) < 2:
            raise ConfigError("need at least two knots")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigError("knot times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def k(self, t: float) -> float:
        times = self.times
        if t < times[0] or t > times[-1]:
            raise ExtrapolationError(
                f"t={t!r} outside tabulated range [{times[0]!r}, {times[-1]!r}]"
            )
        i = bisect.bisect_right(times, t)
        if i == len(times):
            return self.values[-1]
        if i == 0:
            return self.values[0]
        t0, t1 = times[i - 1], times[i]
        w = (t - t0) / (t1 - t0)
        return (1.0 - w) * self.values[i - 1] + w * self.values[i]


def evaluate_k(profile: FrequencyProfile, t: float) -> float:
    """Evaluate the spring profile at time t."""
    return profile.k(float(t))


def analytic_u(profile: FrequencyProfile, t: float) -> LinearModeSolution:
    """Closed-form (u, u_dot, omega_u) sample.

    Raises
    ------
    UnsupportedProfile
        If the profile has no closed-form linear mode.
    DomainError
        If t lies outside the validity domain of the closed form.
    """
    return profile._analytic_u(float(t))


def analytic_rho(profile: FrequencyProfile, t: float) -> AuxiliarySample:
    """Closed-form (rho, rho_dot, omega_raw) of the auxiliary amplitude.

    The raw phase is atan(omega_u(t)) in (-pi/2, pi/2], extended by its
    limit value at boundary points of the domain.  Use
    :func:`omega_rho_from_u` for the accumulated rotation angle between
    two times.
    """
    if not profile.analytic_available:
        raise UnsupportedProfile(
            f"no closed-form auxiliary amplitude for {type(profile).__name__}"
        )
    return profile._analytic_rho(float(t))


def omega_rho_from_u(profile: FrequencyProfile, t0: float, t: float) -> float:
    """Accumulated auxiliary phase omega_rho(t0, t) = integral dt'/rho^2.

    Computed as the difference of raw phases atan(omega_u); this is branch
    consistent because omega_u is monotone increasing wherever u stays
    positive, so the raw phase never wraps.
    """
    return analytic_rho(profile, t).omega_raw - analytic_rho(profile, t0).omega_raw


def profile_label(profile: FrequencyProfile) -> str:
    """Short canonical text form used in manifests and scenario hashing."""
    if isinstance(profile, Hyperbolic):
        return f"hyperbolic(beta={profile.beta!r})"
    if isinstance(profile, InverseQuadratic):
        return f"inverse_quadratic(gamma={profile.gamma!r})"
    if isinstance(profile, Oscillatory):
        return f"oscillatory(delta={profile.delta!r},omega={profile.omega!r})"
    if isinstance(profile, Constant):
        return f"constant(k0={profile.k0!r})"
    if isinstance(profile, Tabulated):
        knots = ";".join(f"{t!r}:{v!r}" for t, v in zip(profile.times, profile.values))
        return f"tabulated({knots})"
    raise ConfigError(f"unknown profile type {type(profile).__name__}")
