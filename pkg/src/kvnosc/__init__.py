"""Phase-space toolkit for the classical oscillator with time-dependent
frequency: auxiliary-equation solutions, conserved quadratic operators,
exact propagator maps, Monte-Carlo/characteristics oracles and a CLI.
"""

from .errors import (
    ConfigError,
    DegenerateInvariant,
    DomainError,
    ExtrapolationError,
    KvnoscError,
    NotAdvection,
    OutOfRange,
    RhoCollapse,
    UnsupportedProfile,
)
from .freq import (
    Constant,
    Hyperbolic,
    InverseQuadratic,
    Oscillatory,
    Tabulated,
    analytic_rho,
    analytic_u,
    evaluate_k,
    omega_rho_from_u,
    profile_label,
)
from .ermakov import ErmakovSolution, convergence_order, solve
from .koopman_ops import (
    AlphaCoefficients,
    PhaseSpaceOperator,
    PointMap,
    build_invariant,
    build_liouvillian,
    commutator,
    exp_action,
    invariance_residual,
    operator_product,
    rotation_generator,
    verify_disentangling,
)
from .propagator import (
    EtaMap,
    GammaCoefficients,
    GaussianState,
    assemble_full_propagator,
    centre_trajectory,
    density_grid,
    eta_at,
    evolve_density,
    gamma_at,
)
from .oracle import (
    classical_invariant,
    ensemble_moments,
    integrate_characteristics,
    invariant_along,
)
from .scenario import Scenario, build_scenarios, parse_scenario_file, preset_scenarios

__version__ = "0.1.0"

__all__ = [
    "AlphaCoefficients",
    "ConfigError",
    "Constant",
    "DegenerateInvariant",
    "DomainError",
    "ErmakovSolution",
    "EtaMap",
    "ExtrapolationError",
    "GammaCoefficients",
    "GaussianState",
    "Hyperbolic",
    "InverseQuadratic",
    "KvnoscError",
    "NotAdvection",
    "Oscillatory",
    "OutOfRange",
    "PhaseSpaceOperator",
    "PointMap",
    "RhoCollapse",
    "Scenario",
    "Tabulated",
    "UnsupportedProfile",
    "analytic_rho",
    "analytic_u",
    "assemble_full_propagator",
    "build_invariant",
    "build_liouvillian",
    "build_scenarios",
    "centre_trajectory",
    "classical_invariant",
    "commutator",
    "convergence_order",
    "density_grid",
    "ensemble_moments",
    "eta_at",
    "evaluate_k",
    "evolve_density",
    "exp_action",
    "gamma_at",
    "integrate_characteristics",
    "invariance_residual",
    "invariant_along",
    "omega_rho_from_u",
    "operator_product",
    "parse_scenario_file",
    "preset_scenarios",
    "profile_label",
    "rotation_generator",
    "solve",
    "verify_disentangling",
]
