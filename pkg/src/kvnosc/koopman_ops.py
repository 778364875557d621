"""Normal-ordered phase-space operator algebra and point-map exponentials.

Operators act on functions of (x, p).  Each operator is a sparse sum of
normal-ordered terms

    coeff * x**a * p**b * (d/dx)**c * (d/dp)**d,

keyed by the exponent tuple (a, b, c, d); multiplication operators stand to
the left of derivatives.  Products are reduced to this canonical form with
the Leibniz identity

    (d/dx)**c x**a = sum_j  C(c, j) * a!/(a-j)! * x**(a-j) (d/dx)**(c-j),

and coefficients below PRUNE_TOL are dropped, so equal operators have equal
term maps.

The hermitian generators of the classical evolution are written through

    lambda_x = -i d/dx,   lambda_p = -i d/dp,

with [x, lambda_x] = [p, lambda_p] = i.

A second half of the module exponentiates first-order advection generators
(linear vector fields plus a real constant) into PointMap objects: an
invertible linear substitution of (x, p) together with a scalar prefactor.
These compose in the reverse of operator order, because applying operators
right-to-left chains substitutions left-to-right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from .errors import DomainError, NotAdvection, OutOfRange

PRUNE_TOL = 1e-14

TermKey = Tuple[int, int, int, int]
Polynomial = Dict[Tuple[int, int], complex]


class PhaseSpaceOperator:
    """Sparse normal-ordered operator on functions of (x, p)."""

    __slots__ = ("terms",)

    def __init__(self, terms: "Dict[TermKey, complex] | None" = None):
        clean: Dict[TermKey, complex] = {}
        for key, val in (terms or {}).items():
            a, b, c, d = key
            if min(a, b, c, d) < 0:
                raise ValueError(f"negative exponent in term {key!r}")
            v = complex(val)
            if abs(v) >= PRUNE_TOL:
                clean[(int(a), int(b), int(c), int(d))] = v
        self.terms = clean

    # -- construction -----------------------------------------------------

    @staticmethod
    def identity() -> "PhaseSpaceOperator":
        return PhaseSpaceOperator({(0, 0, 0, 0): 1.0})

    @staticmethod
    def x() -> "PhaseSpaceOperator":
        return PhaseSpaceOperator({(1, 0, 0, 0): 1.0})

    @staticmethod
    def p() -> "PhaseSpaceOperator":
        return PhaseSpaceOperator({(0, 1, 0, 0): 1.0})

    @staticmethod
    def lambda_x() -> "PhaseSpaceOperator":
        return PhaseSpaceOperator({(0, 0, 1, 0): -1j})

    @staticmethod
    def lambda_p() -> "PhaseSpaceOperator":
        return PhaseSpaceOperator({(0, 0, 0, 1): -1j})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "PhaseSpaceOperator") -> "PhaseSpaceOperator":
        if not isinstance(other, PhaseSpaceOperator):
            return NotImplemented
        out = dict(self.terms)
        for key, val in other.terms.items():
            out[key] = out.get(key, 0.0) + val
        return PhaseSpaceOperator(out)

    def __sub__(self, other: "PhaseSpaceOperator") -> "PhaseSpaceOperator":
        return self + (-1.0) * other

    def __neg__(self) -> "PhaseSpaceOperator":
        return (-1.0) * self

    def __rmul__(self, scalar) -> "PhaseSpaceOperator":
        if isinstance(scalar, (int, float, complex)):
            return PhaseSpaceOperator(
                {key: scalar * val for key, val in self.terms.items()}
            )
        return NotImplemented

    def __mul__(self, other) -> "PhaseSpaceOperator":
        if isinstance(other, (int, float, complex)):
            return other * self
        if not isinstance(other, PhaseSpaceOperator):
            return NotImplemented
        out: Dict[TermKey, complex] = {}
        for (a1, b1, c1, d1), v1 in self.terms.items():
            for (a2, b2, c2, d2), v2 in other.terms.items():
                for j in range(min(c1, a2) + 1):
                    fx = math.comb(c1, j) * math.perm(a2, j)
                    for l in range(min(d1, b2) + 1):
                        w = v1 * v2 * fx * math.comb(d1, l) * math.perm(b2, l)
                        key = (a1 + a2 - j, b1 + b2 - l, c1 + c2 - j, d1 + d2 - l)
                        out[key] = out.get(key, 0.0) + w
        return PhaseSpaceOperator(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, PhaseSpaceOperator) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def isclose(self, other: "PhaseSpaceOperator", tol: float = 1e-13) -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(
            abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) <= tol
            for k in keys
        )

    def max_abs_coeff(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = PRUNE_TOL) -> bool:
        return self.max_abs_coeff() < tol

    # -- action on polynomials ----------------------------------------------

    def apply(self, poly) -> Polynomial:
        """Apply to a polynomial {(i, j): coeff} or monomial tuple (i, j)."""
        if isinstance(poly, tuple):
            poly = {poly: 1.0}
        out: Polynomial = {}
        for (a, b, c, d), v in self.terms.items():
            for (i, j), w in poly.items():
                if c > i or d > j:
                    continue
                coeff = v * w * math.perm(i, c) * math.perm(j, d)
                key = (i - c + a, j - d + b)
                out[key] = out.get(key, 0.0) + coeff
        return {k: v for k, v in out.items() if abs(v) >= PRUNE_TOL}

    def __repr__(self):
        if not self.terms:
            return "PhaseSpaceOperator(0)"
        bits = []
        for key in sorted(self.terms):
            a, b, c, d = key
            names = [
                f"{sym}^{n}" if n > 1 else sym
                for sym, n in (("x", a), ("p", b), ("dx", c), ("dp", d))
                if n
            ]
            body = " ".join(names) or "1"
            bits.append(f"({self.terms[key]:.6g}) {body}")
        return "PhaseSpaceOperator(" + " + ".join(bits) + ")"


X = PhaseSpaceOperator.x()
P = PhaseSpaceOperator.p()
LAMBDA_X = PhaseSpaceOperator.lambda_x()
LAMBDA_P = PhaseSpaceOperator.lambda_p()
IDENTITY = PhaseSpaceOperator.identity()


def commutator(a: PhaseSpaceOperator, b: PhaseSpaceOperator) -> PhaseSpaceOperator:
    return a * b - b * a


def monomials_up_to(degree: int) -> "list[tuple[int, int]]":
    return [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]


def max_applied_coeff(op: PhaseSpaceOperator, degree: int) -> float:
    """Largest output coefficient of op applied to x**i p**j, i + j <= degree."""
    worst = 0.0
    for mono in monomials_up_to(degree):
        for v in op.apply(mono).values():
            worst = max(worst, abs(v))
    return worst


# -- generators of the motion ------------------------------------------------


def build_liouvillian(k: float) -> PhaseSpaceOperator:
    """Evolution generator p lambda_x - k x lambda_p at spring constant k."""
    return P * LAMBDA_X - float(k) * (X * LAMBDA_P)


@dataclass(frozen=True)
class AlphaCoefficients:
    """Coefficients of the conserved quadratic form in the operator basis

        (x^2, lambda_x^2, p^2, lambda_p^2, x p, lambda_x lambda_p).

    ``from_state`` fills them from the auxiliary amplitude:
    alpha0 = alpha3 = (1/rho^2 + rho_dot^2)/2, alpha1 = alpha2 = rho^2/2,
    alpha4 = -rho rho_dot, alpha5 = rho rho_dot.  The hyperbolic pair
    (alpha0, alpha1) has first integrals alpha0 alpha1 - alpha4^2/4 and the
    constants below; see ``first_integrals``.
    """

    alpha0: float
    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float
    alpha5: float

    #: normalization of the auxiliary equation rho'' + k rho = C / rho^3
    C = 1.0
    #: first integral alpha4^2 - 4 alpha0 alpha1  (equals -C)
    C1 = -1.0
    #: first integral alpha5^2 - 4 alpha2 alpha3  (equals -C)
    C2 = -1.0

    @staticmethod
    def from_state(rho: float, rho_dot: float) -> "AlphaCoefficients":
        even = 0.5 * (1.0 / rho**2 + rho_dot**2)
        return AlphaCoefficients(
            alpha0=even,
            alpha1=0.5 * rho**2,
            alpha2=0.5 * rho**2,
            alpha3=even,
            alpha4=-rho * rho_dot,
            alpha5=rho * rho_dot,
        )

    def to_operator(self) -> PhaseSpaceOperator:
        return (
            self.alpha0 * (X * X)
            + self.alpha1 * (LAMBDA_X * LAMBDA_X)
            + self.alpha2 * (P * P)
            + self.alpha3 * (LAMBDA_P * LAMBDA_P)
            + self.alpha4 * (X * P)
            + self.alpha5 * (LAMBDA_X * LAMBDA_P)
        )

    def first_integrals(self) -> "tuple[float, float]":
        """(alpha4^2 - 4 alpha0 alpha1, alpha5^2 - 4 alpha2 alpha3)."""
        return (
            self.alpha4**2 - 4.0 * self.alpha0 * self.alpha1,
            self.alpha5**2 - 4.0 * self.alpha2 * self.alpha3,
        )


def build_invariant(rho: float, rho_dot: float) -> PhaseSpaceOperator:
    """Conserved quadratic operator

        I = [ (x/rho)^2 + (rho_dot x - rho p)^2
            + (lambda_p/rho)^2 + (rho_dot lambda_p + rho lambda_x)^2 ] / 2

    built directly from the squared factors; term-for-term equal to
    AlphaCoefficients.from_state(rho, rho_dot).to_operator().
    """
    rho = float(rho)
    rho_dot = float(rho_dot)
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    lin1 = rho_dot * X - rho * P
    lin2 = rho_dot * LAMBDA_P + rho * LAMBDA_X
    return 0.5 * (
        (1.0 / rho**2) * (X * X)
        + lin1 * lin1
        + (1.0 / rho**2) * (LAMBDA_P * LAMBDA_P)
        + lin2 * lin2
    )


def invariant_time_derivative(
    rho: float, rho_dot: float, k: float
) -> PhaseSpaceOperator:
    """Explicit time derivative of the conserved quadratic, with rho''
    eliminated through the auxiliary equation rho'' = 1/rho^3 - k rho."""
    rho = float(rho)
    rho_dot = float(rho_dot)
    rho_ddot = 1.0 / rho**3 - float(k) * rho
    d_even = -rho_dot / rho**3 + rho_dot * rho_ddot
    d_quad = rho_dot**2 + rho * rho_ddot
    return AlphaCoefficients(
        alpha0=d_even,
        alpha1=rho * rho_dot,
        alpha2=rho * rho_dot,
        alpha3=d_even,
        alpha4=-d_quad,
        alpha5=d_quad,
    ).to_operator()


def invariance_residual(
    profile,
    state,
    t: float,
    test_degree: int = 4,
    *,
    rho_dot_perturbation: float = 0.0,
) -> float:
    """Residual of the invariance condition dI/dt + i [I, L] = 0.

    ``state`` is either an object with ``sample(t)`` or a (rho, rho_dot)
    pair.  The time-derivative side always uses the given dynamical state;
    ``rho_dot_perturbation`` shifts rho_dot only inside the conserved
    quadratic, which breaks the cancellation and serves as a sensitivity
    control: a consistent construction returns roundoff, an inconsistent
    one returns a residual proportional to the perturbation.

    The residual operator is applied to all monomials x**i p**j with
    i + j <= test_degree and the largest resulting coefficient magnitude
    is returned.
    """
    if hasattr(state, "sample"):
        rho, rho_dot = state.sample(t)[:2]
    else:
        rho, rho_dot = float(state[0]), float(state[1])
    k = profile.k(float(t))
    quad = build_invariant(rho, rho_dot + rho_dot_perturbation)
    lhs = invariant_time_derivative(rho, rho_dot, k)
    residual = lhs + 1j * commutator(build_liouvillian(k), quad)
    return max_applied_coeff(residual, test_degree)


def alpha_ode_residuals(
    profile, solution, t: float, fd_step: "float | None" = None
) -> "tuple[float, ...]":
    """Centered finite-difference residuals of the six coefficient ODEs

        a0' = k a4          a1' = a5            a2' = -a4
        a3' = -k a5         a4' = 2 k a2 - 2 a0 a5' = 2 a3 - 2 k a1

    evaluated on a stored solution.  The residual of each equation decays
    as O(h^2) in the difference step h (default: the solution grid step).
    """
    h = float(fd_step) if fd_step is not None else solution.step
    if t - h < solution.t0 or t + h > solution.t_end:
        raise OutOfRange(
            f"need t +- {h!r} inside [{solution.t0!r}, {solution.t_end!r}]"
        )

    def alphas(time: float) -> AlphaCoefficients:
        rho, rho_dot, _ = solution.sample(time)
        return AlphaCoefficients.from_state(rho, rho_dot)

    am = alphas(t - h)
    a0 = alphas(t)
    ap = alphas(t + h)
    k = profile.k(float(t))
    dot = [
        (getattr(ap, f"alpha{i}") - getattr(am, f"alpha{i}")) / (2.0 * h)
        for i in range(6)
    ]
    rhs = (
        k * a0.alpha4,
        a0.alpha5,
        -a0.alpha4,
        -k * a0.alpha5,
        2.0 * k * a0.alpha2 - 2.0 * a0.alpha0,
        2.0 * a0.alpha3 - 2.0 * k * a0.alpha1,
    )
    return tuple(d - r for d, r in zip(dot, rhs))


# -- advection exponentials ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class PointMap:
    """Linear substitution of phase space with a scalar prefactor.

    Acting on a function: (M psi)(x, p) = prefactor * psi(x', p') with
    (x', p') = matrix @ (x, p).
    """

    matrix: np.ndarray
    prefactor: float = 1.0

    @staticmethod
    def identity() -> "PointMap":
        return PointMap(np.eye(2))

    @property
    def det(self) -> float:
        m = self.matrix
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def apply(self, x, p):
        m = self.matrix
        return m[0, 0] * x + m[0, 1] * p, m[1, 0] * x + m[1, 1] * p

    def isclose(self, other: "PointMap", tol: float = 1e-12) -> bool:
        return (
            np.max(np.abs(self.matrix - other.matrix)) <= tol
            and abs(self.prefactor - other.prefactor) <= tol
        )


def operator_product(maps: Sequence[PointMap]) -> PointMap:
    """Point map of a product O_1 O_2 ... O_n given the maps of the factors
    in operator order.

    Operators apply right-to-left, so substitutions chain left-to-right:
    the combined matrix is M_n @ ... @ M_2 @ M_1 and prefactors multiply.
    """
    matrix = np.eye(2)
    prefactor = 1.0
    for m in maps:
        matrix = m.matrix @ matrix
        prefactor *= m.prefactor
    return PointMap(matrix, prefactor)


def exp_action(generator: PhaseSpaceOperator, strength: complex = 1.0) -> PointMap:
    """Exponentiate a first-order advection generator into a PointMap.

    The generator must reduce to  v(x, p) . grad + s  with v linear and s a
    real constant; then exp(G) psi = exp(s) * psi o exp(A) where v = A z.
    Any term outside that family raises NotAdvection.
    """
    a_mat = np.zeros((2, 2))
    scalar = 0.0
    slots = {(1, 0, 1, 0): (0, 0), (0, 1, 1, 0): (0, 1),
             (1, 0, 0, 1): (1, 0), (0, 1, 0, 1): (1, 1)}
    for key, raw in generator.terms.items():
        val = complex(strength) * raw
        if abs(val.imag) > 1e-12 * max(1.0, abs(val)):
            raise NotAdvection(f"complex coefficient {val!r} for term {key!r}")
        a, b, c, d = key
        if c + d == 0 and a + b == 0:
            scalar += val.real
        elif key in slots:
            r, s = slots[key]
            a_mat[r, s] += val.real
        else:
            raise NotAdvection(
                f"term {key!r} is not a linear advection coefficient"
            )
    from scipy.linalg import expm

    return PointMap(expm(a_mat), math.exp(scalar))


def pullback_polynomial(poly: Polynomial, pmap: PointMap) -> Polynomial:
    """Polynomial of (x, p) obtained by applying a PointMap to a polynomial."""
    m = pmap.matrix
    out: Polynomial = {}
    for (i, j), w in poly.items():
        for r in range(i + 1):
            cx = math.comb(i, r) * m[0, 0] ** r * m[0, 1] ** (i - r)
            for s in range(j + 1):
                cp = math.comb(j, s) * m[1, 0] ** s * m[1, 1] ** (j - s)
                key = (r + s, (i - r) + (j - s))
                out[key] = out.get(key, 0.0) + pmap.prefactor * w * cx * cp
    return {k: v for k, v in out.items() if abs(v) >= PRUNE_TOL}


def rotation_generator() -> PhaseSpaceOperator:
    """Generator p lambda_x - x lambda_p of phase-space rotations."""
    return P * LAMBDA_X - X * LAMBDA_P


def verify_disentangling(theta: float) -> float:
    """Deviation between the rotation by theta and its triangular splitting

        exp(-i theta (p lx - x lp)) =
            exp(-i tan(theta) p lx)
          * exp(i ln(cos theta) (x lx - p lp))
          * exp(i tan(theta) x lp)

    measured on the induced point maps and on pulled-back cubic monomials.
    Requires |theta| < pi/2 where tan and ln(cos) exist.
    """
    theta = float(theta)
    if not abs(theta) < 0.5 * math.pi:
        raise DomainError(f"splitting needs |theta| < pi/2, got {theta!r}")
    lhs = exp_action(rotation_generator(), -1j * theta)
    tan = math.tan(theta)
    factors = [
        exp_action(P * LAMBDA_X, -1j * tan),
        exp_action(X * LAMBDA_X - P * LAMBDA_P, 1j * math.log(math.cos(theta))),
        exp_action(X * LAMBDA_P, 1j * tan),
    ]
    rhs = operator_product(factors)
    dev = float(np.max(np.abs(lhs.matrix - rhs.matrix)))
    dev = max(dev, abs(lhs.prefactor - rhs.prefactor))
    for mono in monomials_up_to(3):
        pl = pullback_polynomial({mono: 1.0}, lhs)
        pr = pullback_polynomial({mono: 1.0}, rhs)
        for key in set(pl) | set(pr):
            dev = max(dev, abs(pl.get(key, 0.0) - pr.get(key, 0.0)))
    return dev
