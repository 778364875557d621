import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kvnosc import koopman_ops as ko
from kvnosc.errors import DomainError, NotAdvection, OutOfRange
from kvnosc.freq import Oscillatory
from kvnosc.koopman_ops import (
    IDENTITY,
    LAMBDA_P,
    LAMBDA_X,
    P,
    PhaseSpaceOperator,
    PointMap,
    X,
    commutator,
)


def _terms(entries):
    return PhaseSpaceOperator(dict(entries))


op_strategy = st.builds(
    _terms,
    st.lists(
        st.tuples(
            st.tuples(
                st.integers(0, 2), st.integers(0, 2),
                st.integers(0, 2), st.integers(0, 2),
            ),
            st.complex_numbers(
                max_magnitude=1.0, allow_nan=False, allow_infinity=False
            ),
        ),
        min_size=1,
        max_size=3,
    ),
)

poly_strategy = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.floats(-1.0, 1.0),
    min_size=1,
    max_size=4,
)


def test_canonical_commutators():
    i_op = 1j * IDENTITY
    assert commutator(X, LAMBDA_X).isclose(i_op)
    assert commutator(P, LAMBDA_P).isclose(i_op)
    for a, b in ((X, P), (LAMBDA_X, LAMBDA_P), (X, LAMBDA_P), (P, LAMBDA_X)):
        assert commutator(a, b).is_zero()


def test_rotation_algebra_closure():
    k_plus = P * LAMBDA_X
    k_minus = X * LAMBDA_P
    k_zero = commutator(k_plus, k_minus)
    assert commutator(k_plus, k_zero).isclose(2.0 * k_plus)
    assert commutator(k_minus, k_zero).isclose(-2.0 * k_minus)


def test_liouvillian_first_moments():
    k = 1.7
    liou = ko.build_liouvillian(k)
    assert (1j * commutator(liou, X)).isclose(P)
    assert (1j * commutator(liou, P)).isclose(-k * X)


def test_monomials_up_to():
    monos = ko.monomials_up_to(4)
    assert len(monos) == 15
    assert all(i + j <= 4 for i, j in monos)


def test_apply_to_polynomial():
    # (x d/dx) applied to x^2 p gives 2 x^2 p
    op = X * (1j * LAMBDA_X)
    out = op.apply({(2, 1): 1.0})
    assert set(out) == {(2, 1)}
    assert out[(2, 1)] == pytest.approx(2.0)


@settings(max_examples=40, deadline=None)
@given(a=op_strategy, b=op_strategy, poly=poly_strategy)
def test_normal_ordered_product_soundness(a, b, poly):
    """(A B).apply(f) must equal A.apply(B.apply(f)): the normal-ordered
    product is the operator composition."""
    direct = (a * b).apply(poly)
    staged = a.apply(b.apply(poly))
    keys = set(direct) | set(staged)
    for key in keys:
        assert direct.get(key, 0.0) == pytest.approx(
            staged.get(key, 0.0), abs=1e-10
        )


@settings(max_examples=25, deadline=None)
@given(a=op_strategy, b=op_strategy, c=op_strategy)
def test_jacobi_identity(a, b, c):
    total = (
        commutator(a, commutator(b, c))
        + commutator(b, commutator(c, a))
        + commutator(c, commutator(a, b))
    )
    assert total.max_abs_coeff() < 1e-12


def test_alpha_coefficients_from_state():
    alphas = ko.AlphaCoefficients.from_state(2.0, 0.5)
    assert alphas.alpha0 == pytest.approx(0.5 * (0.25 + 0.25))
    assert alphas.alpha1 == pytest.approx(2.0)
    assert alphas.alpha4 == pytest.approx(-1.0)
    assert alphas.alpha5 == pytest.approx(1.0)
    c1, c2 = alphas.first_integrals()
    assert c1 == pytest.approx(ko.AlphaCoefficients.C1)
    assert c2 == pytest.approx(ko.AlphaCoefficients.C2)
    assert (c1, c2) == pytest.approx((-1.0, -1.0))


def test_first_integrals_constant_along_solutions(sweep_solutions):
    for sol in sweep_solutions.values():
        for t in (0.0, 1.3, 5.9, 10.0):
            rho, rho_dot, _ = sol.sample(t)
            c1, c2 = ko.AlphaCoefficients.from_state(rho, rho_dot).first_integrals()
            assert c1 == pytest.approx(-1.0, abs=1e-10)
            assert c2 == pytest.approx(-1.0, abs=1e-10)


def test_invariant_matches_alpha_operator():
    quad = ko.build_invariant(1.7, -0.4)
    alt = ko.AlphaCoefficients.from_state(1.7, -0.4).to_operator()
    assert quad.isclose(alt)


def test_build_invariant_domain():
    with pytest.raises(DomainError):
        ko.build_invariant(0.0, 1.0)
    with pytest.raises(DomainError):
        ko.build_invariant(-2.0, 1.0)


def test_invariance_residual_zero_for_consistent_state():
    profile = Oscillatory(0.5, 2.5)
    assert ko.invariance_residual(profile, (1.0, 0.0), 0.0) == pytest.approx(
        0.0, abs=1e-12
    )


def test_invariance_residual_detects_corruption(sweep_solutions):
    profile = Oscillatory(0.5, 2.5)
    sol = sweep_solutions["oscillatory_fig2"]
    clean = ko.invariance_residual(profile, sol, 3.7, 4)
    broken = ko.invariance_residual(
        profile, sol, 3.7, 4, rho_dot_perturbation=1e-3
    )
    assert clean < 1e-10
    assert broken > 1e-4


def test_alpha_ode_residuals_shrink(sweep_solutions):
    profile = Oscillatory(0.5, 2.5)
    sol = sweep_solutions["oscillatory_fig2"]
    res = ko.alpha_ode_residuals(profile, sol, 5.0)
    assert max(abs(r) for r in res) < 1e-4
    with pytest.raises(OutOfRange):
        ko.alpha_ode_residuals(profile, sol, 10.0)


def test_exp_action_shear():
    m = ko.exp_action(X * LAMBDA_P, 1j * 0.5)
    assert np.allclose(m.matrix, [[1.0, 0.0], [0.5, 1.0]])
    assert m.prefactor == pytest.approx(1.0)
    m2 = ko.exp_action(P * LAMBDA_X, 1j * (-0.3))
    assert np.allclose(m2.matrix, [[1.0, -0.3], [0.0, 1.0]])


def test_exp_action_dilation():
    m = ko.exp_action(X * LAMBDA_X, 1j * math.log(2.0))
    assert np.allclose(m.matrix, [[2.0, 0.0], [0.0, 1.0]])
    m2 = ko.exp_action(P * LAMBDA_P, 1j * math.log(0.5))
    assert np.allclose(m2.matrix, [[1.0, 0.0], [0.0, 0.5]])


def test_exp_action_rotation():
    theta = 0.7
    m = ko.exp_action(ko.rotation_generator(), -1j * theta)
    expected = [
        [math.cos(theta), -math.sin(theta)],
        [math.sin(theta), math.cos(theta)],
    ]
    assert np.allclose(m.matrix, expected, atol=1e-14)
    assert abs(m.det - 1.0) < 1e-14


def test_exp_action_constant_term_prefactor():
    m = ko.exp_action(X * LAMBDA_X + 0.25j * IDENTITY, 1j * 2.0)
    assert m.prefactor == pytest.approx(math.exp(-0.5))


def test_exp_action_rejects_non_advection():
    with pytest.raises(NotAdvection):
        ko.exp_action(X * X)
    with pytest.raises(NotAdvection):
        ko.exp_action(LAMBDA_X * LAMBDA_P)


def test_operator_product_order():
    shear = ko.exp_action(X * LAMBDA_P, 1j * 0.5)
    rot = ko.exp_action(ko.rotation_generator(), -1j * 0.7)
    combined = ko.operator_product([shear, rot])
    assert np.allclose(combined.matrix, rot.matrix @ shear.matrix)


def test_point_map_basics():
    ident = PointMap.identity()
    assert ident.det == pytest.approx(1.0)
    x, p = ident.apply(1.5, -2.5)
    assert (x, p) == (1.5, -2.5)
    shear = ko.exp_action(X * LAMBDA_P, 1j * 0.5)
    assert not ident.isclose(shear)
    assert shear.isclose(ko.exp_action(X * LAMBDA_P, 1j * 0.5))


def test_pullback_rotation_preserves_radius():
    rot = ko.exp_action(ko.rotation_generator(), -1j * 1.1)
    poly = {(2, 0): 1.0, (0, 2): 1.0}
    pulled = ko.pullback_polynomial(poly, rot)
    assert pulled.keys() == poly.keys()
    for key in poly:
        assert pulled[key] == pytest.approx(poly[key], abs=1e-13)


def test_disentangling_identity():
    for theta in (0.1, -0.1, 0.7, -0.7, 1.2, -1.2):
        assert ko.verify_disentangling(theta) < 1e-12


def test_disentangling_near_branch_point():
    assert ko.verify_disentangling(1.5) < 1e-9


def test_rotation_generator_form():
    assert ko.rotation_generator().isclose(P * LAMBDA_X - X * LAMBDA_P)
