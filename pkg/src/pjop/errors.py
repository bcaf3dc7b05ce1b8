"""Exception hierarchy for pjop.

Every error raised by the library derives from :class:`PjopError`, which is
itself a ``ValueError`` so that callers validating input can catch either.
"""


class PjopError(ValueError):
    pass


class RangeError(PjopError):
    """A parameter lies outside its admissible range."""


class NonPositiveExponent(RangeError):
    pass


class NegativeT(RangeError):
    pass


class DomainError(PjopError):
    pass


class ConvergenceFailure(PjopError):
    pass


class InvalidGrading(RangeError):
    pass


class NonFiniteIntegrand(PjopError):
    pass


class LostPositivity(PjopError):
    """A squared norm came out non-positive: precision or quadrature too coarse."""


class DegreeOutOfRange(PjopError):
    pass


class ScaledPointOutOfDomain(DomainError):
    pass


class OrderOutOfRange(RangeError):
    pass


class TooCloseToCut(DomainError):
    pass


class RegimeViolation(DomainError):
    """Input falls outside the scaling regime where an asymptotic formula applies."""


class ParseError(PjopError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
