"""Acceptance suite.

One test per primary acceptance criterion.  Each test runs the same check
function the `verify` subcommand uses, asserts it passed at the stated
tolerance, enforces the stated runtime budget, and prints the check's
one-line PASS/FAIL summary.
"""

import sys
import time

import pytest

from kvnosc import verification as ver


def _report(line: str) -> None:
    """Print a criterion summary line on the real stdout so it survives
    pytest's capture."""
    print(line, file=sys.__stdout__)


@pytest.fixture(scope="module")
def sweep():
    return ver.solve_sweep()


def _run(fn, *args, limit=None):
    start = time.perf_counter()
    results = fn(*args)
    elapsed = time.perf_counter() - start
    if not isinstance(results, list):
        results = [results]
    for result in results:
        result.seconds = elapsed
        _report(result.line())
        assert result.passed, result.line()
    if limit is not None:
        assert elapsed < limit, f"took {elapsed:.2f}s, budget {limit}s"
    return results


def test_symplectic_identity(sweep):
    """det of the propagator map stays 1 within 1e-9 across all presets
    at 100 sampled times; under 5 s."""
    (result,) = _run(ver.check_eta_determinant, sweep, limit=5.0)
    assert result.tolerance == 1e-9


def test_closed_form_agreement(sweep):
    """Numeric auxiliary solution matches both closed-form profiles within
    1e-6 at step 1e-3; under 5 s."""
    (result,) = _run(ver.check_closed_form_agreement, sweep, limit=5.0)
    assert result.tolerance == 1e-6


def test_invariant_operator_condition(sweep):
    """Invariance residual below 1e-8 on degree-4 monomials at 20 times
    per preset, and the corrupted-rho_dot control exceeds 1e-4; under
    10 s combined."""
    start = time.perf_counter()
    clean = ver.check_invariant_condition(sweep)
    mid = time.perf_counter()
    control = ver.check_invariant_negative_control(sweep)
    end = time.perf_counter()
    clean.seconds = mid - start
    control.seconds = end - mid
    elapsed = end - start
    for result in (clean, control):
        _report(result.line())
        assert result.passed, result.line()
    assert clean.tolerance == 1e-8
    assert control.residual > 1e-4
    assert elapsed < 10.0


def test_six_coupled_odes_fd_ratio():
    """Finite-difference residuals of the six coefficient ODEs drop by a
    factor in [3.5, 4.5] when the step halves."""
    (result,) = _run(ver.check_alpha_ode_ratio)
    assert "ratio=" in result.note
    assert abs(result.residual) <= 0.5


def test_disentangling_identity():
    """Shear-dilation-shear factorization of the rotation deviates by less
    than 1e-12 for theta in {+-0.1, +-0.7, +-1.2}."""
    (result,) = _run(ver.check_disentangling)
    assert result.tolerance == 1e-12


def test_end_to_end_propagator_equivalence(sweep):
    """Exponential-factor assembly equals the closed-form map within
    1e-10 across presets and 50 sampled times."""
    (result,) = _run(ver.check_propagator_vs_eta, sweep)
    assert result.tolerance == 1e-10


def test_oracle_equivalence():
    """Centre trajectory via the inverse substitution map vs independent
    characteristics RK4 within 1e-6 on the figure scenarios; under 10 s."""
    (result,) = _run(ver.check_oracle_equivalence, limit=10.0)
    assert result.tolerance == 1e-6


def test_classical_invariant_conservation():
    """Relative drift of the conserved quadratic along characteristics
    below 1e-6 at step 1e-3, growing ~16x when the step doubles."""
    drift, scaling = _run(
        lambda: [ver.check_invariant_drift(), ver.check_drift_step_scaling()]
    )
    assert drift.tolerance == 1e-6
    assert 8.0 <= scaling.residual <= 32.0


def test_mass_conservation():
    """Grid quadrature of the density constant within 1e-6 across
    snapshots."""
    (result,) = _run(ver.check_mass_conservation)
    assert result.tolerance == 1e-6


def test_csv_determinism():
    """Identical scenario and seed produce byte-identical CSV files."""
    (result,) = _run(ver.check_csv_determinism)
    assert result.note == "byte-identical"
