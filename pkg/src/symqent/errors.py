"""Exception hierarchy shared by every module.

The CLI maps each family onto an exit code: input errors -> 2,
numerical errors -> 3, domain errors -> 4.
"""


class SymqentError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputError(SymqentError, ValueError):
    exit_code = 2


class InvalidState(InputError):
    """Zero or otherwise unusable coefficient vector."""


class DimensionMismatch(InputError):
    pass


class SizeLimitExceeded(InputError):
    """Full 2**n expansion requested above the configured guard."""


class SingularOperator(InputError):
    pass


class NumericalError(SymqentError, ArithmeticError):
    exit_code = 3


class NumericalFailure(NumericalError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class CanonicalizationFailure(NumericalError):
    pass


class DomainError(SymqentError):
    exit_code = 4


class NotGenericState(DomainError):
    """State is not of the four-distinct-points family."""


class NotCovered(DomainError):
    """No closed form is available at this parameter value."""


class Unsupported(DomainError):
    pass
