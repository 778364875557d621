import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from kvnosc import ermakov, oracle, propagator
from kvnosc.errors import ConfigError, DomainError
from kvnosc.freq import Constant, Hyperbolic, Oscillatory
from kvnosc.propagator import GaussianState
from kvnosc.verification import sweep_profiles


def _fundamental_matrix(profile, t_end):
    """Flow matrix of xdot = p, pdot = -k(t) x from an independent
    adaptive integrator."""

    def rhs(t, y):
        return [y[1], -profile.k(t) * y[0], y[3], -profile.k(t) * y[2]]

    res = solve_ivp(rhs, (0.0, t_end), [1.0, 0.0, 0.0, 1.0],
                    rtol=1e-11, atol=1e-12)
    x1, p1, x2, p2 = res.y[:, -1]
    return np.array([[x1, x2], [p1, p2]])


def test_eta_initial_identity(sweep_solutions):
    for sol in sweep_solutions.values():
        m = propagator.eta_at(sol, sol.t0)
        assert np.allclose(m.matrix, np.eye(2), atol=1e-13)


def test_eta_determinant(sweep_solutions):
    for sol in sweep_solutions.values():
        for t in np.linspace(0.0, 10.0, 25):
            assert propagator.eta_at(sol, float(t)).det == pytest.approx(
                1.0, abs=1e-11
            )


def test_eta_inverse_is_flow_matrix(sweep_solutions):
    """[[eta4, eta2], [-eta3, eta1]] must be the fundamental matrix of the
    characteristic system."""
    for (label, profile, _, _), t in zip(sweep_profiles(), (3.7, 10.0, 1.2, 8.1, 5.5, 9.3)):
        sol = sweep_solutions[label]
        m = propagator.eta_at(sol, t)
        flow = np.array([[m.eta4, m.eta2], [-m.eta3, m.eta1]])
        assert np.allclose(flow, _fundamental_matrix(profile, t), atol=1e-7)


def test_constant_k_eta_is_rotation(sweep_solutions):
    sol = sweep_solutions["constant_k1"]
    t = 0.9
    m = propagator.eta_at(sol, t)
    assert m.eta1 == pytest.approx(math.cos(t), abs=1e-10)
    assert m.eta2 == pytest.approx(math.sin(t), abs=1e-10)
    assert m.eta3 == pytest.approx(math.sin(t), abs=1e-10)
    assert m.eta4 == pytest.approx(math.cos(t), abs=1e-10)


def test_gamma_at_unit_state():
    omega = 0.8
    g = propagator.gamma_at(1.0, 0.0, omega)
    assert g.gamma1 == pytest.approx(math.cos(omega))
    assert g.gamma2 == pytest.approx(math.sin(omega))
    assert g.gamma3 == pytest.approx(math.sin(omega))
    assert g.gamma4 == pytest.approx(math.cos(omega))


def test_gamma_domain():
    with pytest.raises(DomainError):
        propagator.gamma_at(0.0, 0.0, 1.0)


def test_assemble_full_propagator_matches_eta(sweep_solutions):
    for sol in sweep_solutions.values():
        for t in (0.0, 2.2, 6.6, 10.0):
            built = propagator.assemble_full_propagator(sol, t)
            target = propagator.eta_at(sol, t)
            assert np.allclose(built.matrix, target.matrix, atol=1e-11)
            assert built.prefactor == pytest.approx(1.0, abs=1e-12)


def test_gaussian_state_validation_and_density():
    with pytest.raises(ConfigError):
        GaussianState(0.0, 0.0, sigma_x=0.0)
    with pytest.raises(ConfigError):
        GaussianState(0.0, 0.0, sigma_p=-1.0)
    state = GaussianState(1.0, -2.0, 0.7, 1.3)
    peak = state.density(1.0, -2.0)
    assert peak == pytest.approx(1.0 / (2.0 * math.pi * 0.7 * 1.3))
    x = np.linspace(-6, 8, 801)
    p = np.linspace(-11, 7, 801)
    vals = state.density(x[:, None], p[None, :])
    mass = np.trapezoid(np.trapezoid(vals, p, axis=1), x)
    assert mass == pytest.approx(1.0, abs=1e-9)


def test_density_constant_along_characteristics(sweep_solutions):
    """The evolved density at the flowed point equals the initial density
    at the starting point."""
    profile = Oscillatory(0.5, 2.5)
    sol = sweep_solutions["oscillatory_fig2"]
    state = GaussianState(2.0, 2.0)
    t = 6.3
    eta = propagator.eta_at(sol, t)
    rng = np.random.default_rng(11)
    for x0, p0 in rng.normal(2.0, 1.0, (10, 2)):
        traj = oracle.integrate_characteristics(profile, x0, p0, t, 1e-3)
        evolved = propagator.evolve_density(state, eta, traj.x[-1], traj.p[-1])
        assert evolved == pytest.approx(state.density(x0, p0), abs=1e-9)


def test_centre_trajectory_single_and_array(sweep_solutions):
    sol = sweep_solutions["constant_k1"]
    times = np.array([0.0, math.pi / 2])
    centre = propagator.centre_trajectory(sol, -3.0, 3.0, times)
    assert centre.x_c[0] == pytest.approx(-3.0)
    assert centre.p_c[0] == pytest.approx(3.0)
    assert centre.x_c[1] == pytest.approx(3.0, abs=1e-9)
    assert centre.p_c[1] == pytest.approx(3.0, abs=1e-9)


def test_density_grid_initial_time(sweep_solutions):
    sol = sweep_solutions["oscillatory_fig2"]
    state = GaussianState(2.0, 2.0)
    grid = propagator.density_grid(state, sol, 0.0, n=32)
    expected = state.density(grid.x[:, None], grid.p[None, :])
    assert np.max(np.abs(grid.values - expected)) < 1e-14
    assert grid.mass == pytest.approx(1.0, abs=1e-6)


def test_density_grid_mass_with_strong_shear():
    profile = Hyperbolic(2.0)
    sol = ermakov.solve(profile, 0.5, 0.0, 10.0, 1e-3)
    state = GaussianState(-3.0, 3.0)
    grid = propagator.density_grid(state, sol, 10.0)
    assert grid.x.size > 256, "grid must refine under strong shear"
    assert grid.mass == pytest.approx(1.0, abs=1e-7)


def test_density_grid_mass_constant(sweep_solutions):
    sol = sweep_solutions["oscillatory_fig2"]
    state = GaussianState(2.0, 2.0)
    masses = [
        propagator.density_grid(state, sol, t, n=128).mass
        for t in (0.0, 3.3, 10.0)
    ]
    assert max(abs(m - masses[0]) for m in masses) < 1e-6


def test_density_grid_validation(sweep_solutions):
    sol = sweep_solutions["oscillatory_fig2"]
    state = GaussianState(2.0, 2.0)
    with pytest.raises(ConfigError):
        propagator.density_grid(state, sol, 1.0, n=1)
