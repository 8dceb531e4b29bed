"""Three-valued verdicts shared by every numerical check."""

from enum import Enum


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    @classmethod
    def classify(cls, value: float, tol: float) -> 'Verdict':
        """PASS above +tol, FAIL below -tol, INCONCLUSIVE in between (and for NaN)."""
        if value > tol:
            return cls.PASS
        if value < -tol:
            return cls.FAIL
        return cls.INCONCLUSIVE

    @classmethod
    def combine(cls, verdicts) -> 'Verdict':
        """FAIL dominates INCONCLUSIVE, which dominates PASS."""
        verdicts = list(verdicts)
        if cls.FAIL in verdicts:
            return cls.FAIL
        if cls.INCONCLUSIVE in verdicts:
            return cls.INCONCLUSIVE
        return cls.PASS

    def exit_code(self) -> int:
        return {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 2}[self]
