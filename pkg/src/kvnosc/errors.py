"""Exception types raised across the package.

All package errors derive from :class:`KvnoscError` so callers can catch
everything library-specific with a single except clause.
"""


class KvnoscError(Exception):
    """Base class for all package errors."""


class DomainError(KvnoscError):
    """A time or parameter lies outside the domain where a formula is valid."""


class ExtrapolationError(DomainError):
    """A tabulated profile was evaluated outside its knot range."""


class UnsupportedProfile(KvnoscError):
    """The requested closed-form result is not available for this profile."""


class ConfigError(KvnoscError):
    """Invalid configuration input (bad key, unparseable value, bad grid)."""


class RhoCollapse(KvnoscError):
    """The auxiliary amplitude rho dropped below the collapse guard.

    Raised by the Ermakov integrator whenever any Runge-Kutta stage would
    evaluate the right-hand side at rho < 1e-8, where 1/rho**3 overflows the
    trust region of the fixed-step scheme.
    """


class OutOfRange(KvnoscError):
    """A sample time lies outside the stored solution grid."""


class NotAdvection(KvnoscError):
    """The generator passed to exp_action is not a first-order advection
    field with linear coefficients, so its exponential is not a point map."""


class DegenerateInvariant(KvnoscError):
    """The conserved quadrature is (numerically) zero along the trajectory,
    so relative drift is undefined."""
