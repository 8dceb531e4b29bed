from harmonic_ctc.common.decorators import exit_code_on_failure
from harmonic_ctc.common.exceptions import (
    HarmonicCtcError,
    BadInputException,
    InvalidPolynomial,
    NormalizationError,
    InvalidGrid,
    NonUnimodularRotation,
    TruncationTooSmall,
    InvalidIndex,
    BadWeights,
    RadiusOutOfRange,
    ParseError,
    ValidationError,
    NonDivisible,
    DenominatorNearZero,
    OriginOnCurve,
    DegenerateEdge,
)
from harmonic_ctc.common.hash import file_digest, stable_hash
from harmonic_ctc.common.patterns import Singleton
from harmonic_ctc.common.verdict import Verdict
