"""Exception hierarchy shared by all modules.

Parameter problems map to CLI exit code 2, numerical failures to exit code 3.
"""


class GnsError(Exception):
    """Base class for library errors."""

    exit_code = 1


class ParameterError(GnsError, ValueError):
    """Inputs outside the domain of an operation."""

    exit_code = 2


class DomainError(ParameterError):
    pass


class PoleError(DomainError):
    """Argument sits on a pole of a Gamma factor."""


class RegimeError(ParameterError):
    """Operation not available in the parameter regime."""


class DivergenceError(ParameterError):
    """Integral or series does not converge for these parameters."""


class NumericalError(GnsError, ArithmeticError):
    """Computation failed to meet its tolerance."""

    exit_code = 3


class ToleranceError(NumericalError):
    pass


class InseparablePolesError(ParameterError):
    """No vertical line separates the left and right pole sets."""
