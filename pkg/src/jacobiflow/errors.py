"""Exception taxonomy shared across the package."""


class JacobiflowError(Exception):
    """Base class for all package-specific errors."""


class InputError(JacobiflowError, ValueError):
    """Malformed or dimensionally inconsistent user input."""


class DomainError(JacobiflowError, ValueError):
    """Evaluation outside the admissible domain (e.g. fiber coordinate at 0)."""


class NumericError(JacobiflowError, ArithmeticError):
    """Non-finite values produced during evaluation."""


class ConfigurationError(JacobiflowError, ValueError):
    """Inconsistent configuration (e.g. derivative data missing for a requested order)."""


class SolverError(JacobiflowError, RuntimeError):
    """Implicit solve failed (non-convergence, singular Jacobian, trust region)."""
