"""Exception taxonomy shared across the package."""


class LpzerosError(Exception):
    """Base class for all package errors."""


class ConfigError(LpzerosError):
    """Invalid configuration value or violated input invariant."""


class DomainError(LpzerosError):
    """Evaluation requested outside a declared domain."""


class NumericError(LpzerosError):
    """Non-finite value encountered during integration."""


class StructuralError(LpzerosError):
    """A structural guarantee failed (real, simple, hull-bounded zeros)."""


class ConvergenceError(LpzerosError):
    """The nonlinear solver could not reach the requested residual."""


class InapplicableConditionError(LpzerosError):
    """A mass-point quantity was requested for a measure without a mass."""
