"""Exception hierarchy shared by all modules."""


class DefectChainError(Exception):
    """Base class for every error raised by the package."""


class ParameterError(DefectChainError, ValueError):
    """Invalid physical or numerical parameters."""


class ConfigurationError(ParameterError):
    """A run configuration that cannot deliver the requested accuracy."""


class NumericalError(DefectChainError, ArithmeticError):
    """A numerical routine failed (non-convergence, non-finite values)."""


class SingularityError(NumericalError):
    """Evaluation exactly on a band edge or other removable singularity."""


class PoleError(NumericalError):
    """Evaluation on the bound-state pole of the full Green function."""


class NoBoundStateError(ParameterError):
    """Bound-state quantity requested for a defect-free chain (alpha == 0)."""
