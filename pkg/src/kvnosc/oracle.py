"""Independent ground truth: characteristics of the Liouville flow.

The density transport equation for the driven oscillator is advection along
the characteristic curves

    x' = p,    p' = -k(t) x,

which this module integrates with its own fixed-step RK4 loop.  Nothing
here shares right-hand-side plumbing with the auxiliary-amplitude solver
or the substitution-map propagator; agreement between the two is therefore
a genuine cross-check rather than a tautology.

Ensembles draw initial points from a Gaussian state with a counter-based
generator keyed by (seed, sample index), so each sample's draw is fixed
regardless of ensemble evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .ermakov import ErmakovSolution
from .errors import ConfigError, DegenerateInvariant
from .freq import FrequencyProfile
from .propagator import GaussianState


@dataclass(frozen=True)
class Trajectory:
    """Single phase-space characteristic on a uniform time grid."""

    times: np.ndarray
    x: np.ndarray
    p: np.ndarray


class MomentTable(NamedTuple):
    times: np.ndarray
    mean_x: np.ndarray
    mean_p: np.ndarray
    var_x: np.ndarray
    var_p: np.ndarray


def _grid(t0: float, t_end: float, step: float) -> "tuple[np.ndarray, float, int]":
    if not step > 0:
        raise ConfigError(f"step must be positive, got {step!r}")
    if not t_end > t0:
        raise ConfigError(f"t_end ({t_end!r}) must exceed t0 ({t0!r})")
    n = max(1, round((t_end - t0) / step))
    return np.linspace(t0, t_end, n + 1), (t_end - t0) / n, n


def integrate_characteristics(
    profile: FrequencyProfile,
    x0: float,
    p0: float,
    t_end: float,
    step: float = 1e-3,
    t0: float = 0.0,
) -> Trajectory:
    """Fixed-step RK4 solution of x' = p, p' = -k(t) x."""
    grid, h, n = _grid(float(t0), float(t_end), float(step))
    xs = np.empty(n + 1)
    ps = np.empty(n + 1)
    x, p = float(x0), float(p0)
    xs[0], ps[0] = x, p
    k_of = profile.k
    half = 0.5 * h
    sixth = h / 6.0
    for i in range(n):
        t = grid[i]
        k1 = k_of(t)
        k2 = k_of(t + half)
        k4 = k_of(t + h)
        ax1, ap1 = p, -k1 * x
        ax2, ap2 = p + half * ap1, -k2 * (x + half * ax1)
        ax3, ap3 = p + half * ap2, -k2 * (x + half * ax2)
        ax4, ap4 = p + h * ap3, -k4 * (x + h * ax3)
        x += sixth * (ax1 + 2.0 * (ax2 + ax3) + ax4)
        p += sixth * (ap1 + 2.0 * (ap2 + ap3) + ap4)
        xs[i + 1], ps[i + 1] = x, p
    return Trajectory(grid, xs, ps)


def ensemble_moments(
    profile: FrequencyProfile,
    state0: GaussianState,
    n_samples: int,
    t_end: float,
    step: float = 1e-2,
    seed: int = 0,
    t0: float = 0.0,
    record_stride: int = 10,
) -> MomentTable:
    """Monte-Carlo moments of an evolved Gaussian ensemble.

    Each sample's initial point comes from its own counter-based stream
    keyed by (seed, index); the whole ensemble is then advanced in lock
    step by vectorized RK4, and (mean, variance) of each coordinate are
    recorded every record_stride steps (population variance).
    """
    if n_samples < 1000:
        raise ConfigError(f"need n_samples >= 1000, got {n_samples!r}")
    if record_stride < 1:
        raise ConfigError("record_stride must be >= 1")
    grid, h, n = _grid(float(t0), float(t_end), float(step))
    draws = np.empty((2, n_samples))
    for i in range(n_samples):
        gen = np.random.Generator(np.random.Philox(key=(int(seed) << 64) | i))
        draws[:, i] = gen.standard_normal(2)
    x = state0.xc + state0.sigma_x * draws[0]
    p = state0.pc + state0.sigma_p * draws[1]

    rec_idx = list(range(0, n + 1, record_stride))
    if rec_idx[-1] != n:
        rec_idx.append(n)
    out_t = grid[rec_idx]
    stats = np.empty((4, len(rec_idx)))

    def record(slot: int):
        stats[0, slot] = x.mean()
        stats[1, slot] = p.mean()
        stats[2, slot] = x.var()
        stats[3, slot] = p.var()

    record(0)
    slot = 1
    k_of = profile.k
    half = 0.5 * h
    sixth = h / 6.0
    for i in range(n):
        t = grid[i]
        k1 = k_of(t)
        k2 = k_of(t + half)
        k4 = k_of(t + h)
        ax1, ap1 = p, -k1 * x
        ax2, ap2 = p + half * ap1, -k2 * (x + half * ax1)
        ax3, ap3 = p + half * ap2, -k2 * (x + half * ax2)
        ax4, ap4 = p + h * ap3, -k4 * (x + h * ax3)
        x = x + sixth * (ax1 + 2.0 * (ax2 + ax3) + ax4)
        p = p + sixth * (ap1 + 2.0 * (ap2 + ap3) + ap4)
        if slot < len(rec_idx) and i + 1 == rec_idx[slot]:
            record(slot)
            slot += 1
    return MomentTable(out_t, stats[0], stats[1], stats[2], stats[3])


def classical_invariant(rho, rho_dot, x, p):
    """Observable sector of the conserved quadratic:
    I_cl = [(x/rho)^2 + (rho_dot x - rho p)^2] / 2."""
    return 0.5 * ((x / rho) ** 2 + (rho_dot * x - rho * p) ** 2)


def invariant_along(
    profile: FrequencyProfile,
    solution: ErmakovSolution,
    trajectory: Trajectory,
) -> float:
    """Maximum relative drift of I_cl along a characteristic.

    Evaluates I_cl(t) with (rho, rho_dot) sampled from the auxiliary
    solution at the trajectory's times and returns
    max |I_cl(t) - I_cl(0)| / I_cl(0).
    """
    rho, rho_dot, _ = solution.sample(trajectory.times)
    vals = classical_invariant(rho, rho_dot, trajectory.x, trajectory.p)
    i0 = float(vals[0])
    if abs(i0) < 1e-12:
        raise DegenerateInvariant(
            f"I_cl(0) = {i0!r} is numerically zero; relative drift undefined"
        )
    return float(np.max(np.abs(vals - i0)) / i0)
