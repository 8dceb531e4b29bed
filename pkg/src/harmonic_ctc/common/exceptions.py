"""Exception hierarchy for harmonic_ctc.

Every error raised by the library derives from :class:`HarmonicCtcError`.
Errors caused by what a caller handed in additionally derive from
:class:`BadInputException`, which is what the CLI maps to exit code 3.
"""

from typing import Optional


class HarmonicCtcError(Exception):
    """Base class for all library errors."""
    pass


class BadInputException(HarmonicCtcError):
    """Exception raised for errors in the input provided."""
    pass


class InvalidPolynomial(BadInputException):
    """Coefficient sequence is empty, too short, or holds NaN/Inf."""
    pass


class NormalizationError(BadInputException):
    """A map or starlike generator violates the SH0 normalization."""
    pass


class InvalidGrid(BadInputException):
    """A sampling grid violates its invariants."""
    pass


class NonUnimodularRotation(BadInputException):
    """A rotation or slice parameter is not on the unit circle."""
    pass


class NonDivisible(HarmonicCtcError):
    """Leading coefficients block division by a power of z."""
    pass


class TruncationTooSmall(BadInputException):
    """Truncation degree cannot hold the requested product."""
    pass


class InvalidIndex(BadInputException):
    pass


class BadWeights(BadInputException):
    """Convex-combination weights are negative or do not sum to one."""
    pass


class RadiusOutOfRange(BadInputException):
    pass


class DenominatorNearZero(HarmonicCtcError):
    """A margin denominator vanished at a sample point.

    Attributes:
        z: The offending point, when known.
    """

    def __init__(self, message: str = "", z: Optional[complex] = None):
        super().__init__(message)
        self.z = z


class OriginOnCurve(HarmonicCtcError):
    """Starlikeness about 0 is undefined when the curve passes through 0."""
    pass


class DegenerateEdge(HarmonicCtcError):
    """Two consecutive curve samples coincide."""
    pass


class ParseError(BadInputException):
    """A map-definition file is not well-formed JSON of the expected shape."""
    pass


class ValidationError(BadInputException):
    """A map-definition file parsed but holds invalid values.

    Attributes:
        field: Dotted path of the offending field (``"u[1]"``, ``"gamma"``).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
