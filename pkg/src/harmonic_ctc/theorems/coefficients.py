"""Coefficient theorems for KH0(k, gamma).

* the necessary bound |u_m| + |v_m| <= gamma + m(1 - gamma), sharp for
  z + [gamma + m(1 - gamma)] z^m;
* the sufficient condition
  sum 2m(|u_m| + |v_m|) + sum (|1 - 2 gamma| + 1)|C_m| <= 2(1 - gamma);
* closure under convex combinations.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from harmonic_ctc.classes.constructs import ClassParams
from harmonic_ctc.common.exceptions import BadInputException, BadWeights, InvalidIndex
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.series.polynomial import ComplexPolynomial, HarmonicPolynomialMap

logger = logging.getLogger(__name__)


def coefficient_sum_bound(m: Union[int, np.ndarray], gamma: float) -> Union[float, np.ndarray]:
    """gamma + m(1 - gamma). Every bound and extremal coefficient goes through here."""
    return gamma + m * (1.0 - gamma)


@dataclass(frozen=True)
class CoefficientReport:
    """Per-index rows are (m, |u_m| + |v_m|, bound, slack).

    ``aggregate_sufficient`` is (lhs, rhs, slack) for the sufficient
    condition and None for the necessary check.
    """

    verdict: Verdict
    per_index: Tuple[Tuple[int, float, float, float], ...]
    aggregate_sufficient: Optional[Tuple[float, float, float]] = None

    @property
    def worst_index(self) -> Optional[int]:
        if not self.per_index:
            return None
        return min(self.per_index, key=lambda row: (row[3], row[0]))[0]

    def as_dict(self):
        result = {
            "verdict": self.verdict.value,
            "per_index": [
                {"m": m, "coefficient_sum": total, "bound": bound, "slack": slack}
                for m, total, bound, slack in self.per_index
            ],
        }
        if self.aggregate_sufficient is not None:
            lhs, rhs, slack = self.aggregate_sufficient
            result["aggregate_sufficient"] = {"lhs": lhs, "rhs": rhs, "slack": slack}
        return result


def _validate_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (0.0 <= gamma < 1.0):
        raise BadInputException(f"gamma must lie in [0, 1), got {gamma!r}")
    return gamma


def _rows(f: HarmonicPolynomialMap, gamma: float):
    rows = []
    for m in range(2, f.truncation_degree + 1):
        total = abs(f.u[m]) + abs(f.v[m])
        bound = coefficient_sum_bound(m, gamma)
        rows.append((m, total, bound, bound - total))
    return tuple(rows)


def necessary_coeff_check(f: HarmonicPolynomialMap, gamma: float,
                          tol: Optional[float] = None) -> CoefficientReport:
    """Coefficient-sum bound for m = 2..N. FAIL certifies non-membership; PASS is necessary only."""
    gamma = _validate_gamma(gamma)
    tol = get_settings().coefficient_tol if tol is None else tol
    rows = _rows(f, gamma)
    verdict = Verdict.PASS if all(row[3] >= -tol for row in rows) else Verdict.FAIL
    report = CoefficientReport(verdict, rows)
    if verdict is Verdict.FAIL:
        logger.info(f"necessary coefficient bound fails first at m={report.worst_index}")
    return report


def sufficient_coeff_check(f: HarmonicPolynomialMap, params: ClassParams,
                           tol: Optional[float] = None) -> CoefficientReport:
    """Sufficient coefficient condition; PASS implies membership.

    Equality lhs = rhs counts as PASS (the condition is non-strict).
    """
    tol = get_settings().coefficient_tol if tol is None else tol
    gamma = params.gamma
    rows = _rows(f, gamma)
    m = np.arange(2, f.truncation_degree + 1)
    totals = np.array([row[1] for row in rows])
    kernel = params.starlike_kernel.coeffs
    lhs = float(np.sum(2.0 * m * totals) + (abs(1.0 - 2.0 * gamma) + 1.0) * np.sum(np.abs(kernel[2:])))
    rhs = 2.0 * (1.0 - gamma)
    slack = rhs - lhs
    verdict = Verdict.PASS if slack >= -tol else Verdict.FAIL
    return CoefficientReport(verdict, rows, (lhs, rhs, slack))


def extremal_map(m: int, gamma: float, degree: Optional[int] = None) -> HarmonicPolynomialMap:
    """z + [gamma + m(1 - gamma)] z^m, attaining the coefficient bound at index m."""
    if int(m) != m or m < 2:
        raise InvalidIndex(f"extremal index must be an integer >= 2, got {m!r}")
    gamma = _validate_gamma(gamma)
    m = int(m)
    degree = m if degree is None else degree
    u = ComplexPolynomial.identity(degree) + ComplexPolynomial.monomial(
        m, coefficient_sum_bound(m, gamma), degree)
    return HarmonicPolynomialMap.analytic(u)


def convex_combine(maps: Sequence[HarmonicPolynomialMap], weights: Sequence[float],
                   tol: Optional[float] = None) -> HarmonicPolynomialMap:
    """sum s_a f_a, combining analytic and co-analytic parts separately."""
    tol = get_settings().weight_tol if tol is None else tol
    maps = list(maps)
    weights = np.asarray(list(weights), dtype=float)
    if not maps or len(maps) != weights.size:
        raise BadWeights(f"need one weight per map, got {len(maps)} maps and {weights.size} weights")
    if not np.all(np.isfinite(weights)) or np.any(weights < 0):
        raise BadWeights(f"weights must be finite and nonnegative, got {weights.tolist()}")
    total = float(np.sum(weights))
    if abs(total - 1.0) > tol:
        raise BadWeights(f"weights must sum to 1, got {total!r}")
    weights = weights / total
    degree = max(f.truncation_degree for f in maps)
    u = sum(s * f.u.pad(degree).coeffs for s, f in zip(weights, maps))
    v = sum(s * f.v.pad(degree).coeffs for s, f in zip(weights, maps))
    return HarmonicPolynomialMap(ComplexPolynomial(u), ComplexPolynomial(v))
