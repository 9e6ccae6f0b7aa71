"""Exception hierarchy shared across the package."""


class DyadsimError(Exception):
    """Base class for all package errors."""


class ConfigurationError(DyadsimError):
    """Inconsistent or invalid network configuration."""


class DivergedError(DyadsimError):
    """Integration blew up (non-finite state or amplitude beyond bound)."""


class NoCondensateError(DyadsimError):
    """Requested steady state does not exist (below condensation threshold)."""


class DegenerateCouplingError(DyadsimError):
    """Closed-form corrections are singular at |J| = 0."""


class SingularLinearizationError(DyadsimError):
    """First-order linear system is rank-deficient (bifurcation point)."""


class NoRootError(DyadsimError):
    """A level crossing was not found within the scanned grid."""


class InsufficientPointsError(DyadsimError):
    """Too few data points for the requested fit."""


class TooFewSamplesError(DyadsimError):
    """Sample count below the validity floor of a statistical test."""


class LowYieldError(DyadsimError):
    """Too many unresolved or non-stationary trials in a stream campaign."""
