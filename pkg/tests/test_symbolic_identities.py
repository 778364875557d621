"""Symbolic proofs of the identities the numeric suite samples.

Everything here is exact algebra: the eta-map determinant, the six
coefficient ODEs closing on the auxiliary equation, conservation of the
quadratic along characteristics, and the shear-dilation-shear
factorization of a rotation.
"""

import sympy as sp


def _eta_symbols():
    rho, rho_dot, rho0, rho_dot0, w = sp.symbols(
        "rho rho_dot rho0 rho_dot0 omega", positive=True
    )
    eta1 = rho0 * sp.cos(w) / rho + rho0 * rho_dot * sp.sin(w)
    eta2 = rho0 * rho * sp.sin(w)
    eta3 = (1 / (rho * rho0) + rho_dot * rho_dot0) * sp.sin(w) + (
        rho_dot0 / rho - rho_dot / rho0
    ) * sp.cos(w)
    eta4 = rho * sp.cos(w) / rho0 - rho * rho_dot0 * sp.sin(w)
    return (rho, rho_dot, rho0, rho_dot0, w), (eta1, eta2, eta3, eta4)


def test_eta_determinant_is_one():
    _, (eta1, eta2, eta3, eta4) = _eta_symbols()
    assert sp.simplify(eta1 * eta4 + eta2 * eta3 - 1) == 0


def test_eta_inverse_flow_satisfies_characteristics():
    """x(t) = eta4 x0 + eta2 p0, p(t) = -eta3 x0 + eta1 p0 solves
    xdot = p, pdot = -k x when rho solves the auxiliary equation and
    omega' = 1/rho^2."""
    t = sp.Symbol("t")
    k = sp.Function("k")
    rho = sp.Function("rho", positive=True)
    w = sp.Function("omega")
    x0, p0, rho0, rho_dot0 = sp.symbols("x0 p0 rho0 rho_dot0")

    subs = {
        sp.Derivative(rho(t), t, 2): 1 / rho(t) ** 3 - k(t) * rho(t),
        sp.Derivative(w(t), t): 1 / rho(t) ** 2,
    }
    eta1 = rho0 * sp.cos(w(t)) / rho(t) + rho0 * sp.Derivative(rho(t), t) * sp.sin(w(t))
    eta2 = rho0 * rho(t) * sp.sin(w(t))
    eta3 = (1 / (rho(t) * rho0) + sp.Derivative(rho(t), t) * rho_dot0) * sp.sin(
        w(t)
    ) + (rho_dot0 / rho(t) - sp.Derivative(rho(t), t) / rho0) * sp.cos(w(t))
    eta4 = rho(t) * sp.cos(w(t)) / rho0 - rho(t) * rho_dot0 * sp.sin(w(t))

    x = eta4 * x0 + eta2 * p0
    p = -eta3 * x0 + eta1 * p0
    first = sp.simplify((sp.diff(x, t) - p).subs(subs).doit().subs(subs))
    second = sp.simplify((sp.diff(p, t) + k(t) * x).subs(subs).doit().subs(subs))
    assert sp.simplify(first) == 0
    assert sp.simplify(second) == 0


def test_alpha_odes_close_on_auxiliary_equation():
    t = sp.Symbol("t")
    k = sp.Function("k")
    rho = sp.Function("rho", positive=True)
    r = rho(t)
    rd = sp.Derivative(r, t)
    aux = {sp.Derivative(r, t, 2): 1 / r**3 - k(t) * r}

    a0 = (1 / r**2 + rd**2) / 2
    a1 = r**2 / 2
    a2 = r**2 / 2
    a3 = (1 / r**2 + rd**2) / 2
    a4 = -r * rd
    a5 = r * rd

    odes = [
        sp.diff(a0, t) - k(t) * a4,
        sp.diff(a1, t) - a5,
        sp.diff(a2, t) + a4,
        sp.diff(a3, t) + k(t) * a5,
        sp.diff(a4, t) - (2 * k(t) * a2 - 2 * a0),
        sp.diff(a5, t) - (2 * a3 - 2 * k(t) * a1),
    ]
    for ode in odes:
        assert sp.simplify(ode.subs(aux).doit().subs(aux)) == 0


def test_scalar_reduction_carries_half_constant():
    """alpha = rho^2/2 turns the auxiliary equation into
    alpha'' + 2 k alpha - alpha'^2/(2 alpha) = (1/2) / alpha."""
    t = sp.Symbol("t")
    k = sp.Function("k")
    rho = sp.Function("rho", positive=True)
    r = rho(t)
    aux = {sp.Derivative(r, t, 2): 1 / r**3 - k(t) * r}
    alpha = r**2 / 2
    lhs = (
        sp.diff(alpha, t, 2)
        + 2 * k(t) * alpha
        - sp.diff(alpha, t) ** 2 / (2 * alpha)
    )
    value = sp.simplify(lhs.subs(aux).doit().subs(aux) * alpha)
    assert sp.simplify(value - sp.Rational(1, 2)) == 0


def test_classical_invariant_conserved_along_characteristics():
    t = sp.Symbol("t")
    k = sp.Function("k")
    rho = sp.Function("rho", positive=True)
    x = sp.Function("x")
    p = sp.Function("p")
    r, xx, pp = rho(t), x(t), p(t)
    motion = {
        sp.Derivative(xx, t): pp,
        sp.Derivative(pp, t): -k(t) * xx,
        sp.Derivative(r, t, 2): 1 / r**3 - k(t) * r,
    }
    inv = ((xx / r) ** 2 + (sp.Derivative(r, t) * xx - r * pp) ** 2) / 2
    d = sp.diff(inv, t).subs(motion).doit().subs(motion)
    assert sp.simplify(d) == 0


def test_disentangling_factorization():
    """Gauss decomposition of a rotation: lower shear by tan(theta),
    dilation by cos(theta), upper shear by -tan(theta)."""
    theta = sp.Symbol("theta")
    rotation = sp.Matrix(
        [[sp.cos(theta), -sp.sin(theta)], [sp.sin(theta), sp.cos(theta)]]
    )
    upper = sp.Matrix([[1, -sp.tan(theta)], [0, 1]])
    dilation = sp.Matrix([[sp.cos(theta), 0], [0, 1 / sp.cos(theta)]])
    lower = sp.Matrix([[1, 0], [sp.tan(theta), 1]])

    product = lower * dilation * upper
    assert sp.simplify(product - rotation) == sp.zeros(2, 2)
