"""Caratheodory representation of the analytic margin.

For F in K(k, gamma) the function

    P(z) = (z F'(z)/Phi_k(z) - gamma) / (1 - gamma) = 1 + p_1 z + p_2 z^2 + ...

has positive real part, so |p_m| <= 2. The diagnostic reports Re P on the
grid, P(0), and the p_m obtained by power-series division of F' by Phi_k/z.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from harmonic_ctc.classes.constructs import (
    ClassParams,
    MarginReport,
    SamplingGrid,
    analytic_margin_many,
    scan_grid,
)
from harmonic_ctc.common.exceptions import NormalizationError
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.config.verbosity import Verbosity
from harmonic_ctc.series.polynomial import ComplexPolynomial, derivative, series_divide

logger = logging.getLogger(__name__)

P0_TOL = 1e-12
CARATHEODORY_BOUND = 2.0
BOUND_TOL = 1e-9


@dataclass(frozen=True)
class HerglotzReport(MarginReport):
    """Positivity of Re P on the grid plus the leading coefficients of P."""

    p0: complex = 1 + 0j
    coefficients: Tuple[complex, ...] = ()
    max_coefficient: float = 0.0
    coefficient_bound_holds: bool = True

    def as_dict(self):
        result = super().as_dict()
        result.update({
            "p0": self.p0,
            "coefficients": list(self.coefficients),
            "max_coefficient": self.max_coefficient,
            "coefficient_bound_holds": self.coefficient_bound_holds,
        })
        return result


def herglotz_coefficients(F: ComplexPolynomial, params: ClassParams,
                          count: Optional[int] = None) -> Tuple[complex, ...]:
    """p_1..p_count of P = (F'/(Phi_k/z) - gamma)/(1 - gamma)."""
    count = get_settings().herglotz_terms if count is None else count
    quotient = series_divide(derivative(F), params.kernel_quotient, degree=max(count, 1))
    p = quotient.coeffs / (1.0 - params.gamma)
    return tuple(complex(c) for c in p[1:count + 1])


def herglotz_diagnostic(F: ComplexPolynomial, params: ClassParams,
                        grid: Optional[SamplingGrid] = None, count: Optional[int] = None,
                        workers: Optional[int] = None,
                        verbosity: Verbosity = Verbosity.ONCE) -> HerglotzReport:
    if not F.is_normalized():
        raise NormalizationError(f"analytic function must start z + ..., got F_0={F[0]}, F_1={F[1]}")
    grid = SamplingGrid.default() if grid is None else grid
    scale = 1.0 - params.gamma
    slope = derivative(F)
    positivity = scan_grid(lambda zs: analytic_margin_many(F, params, zs, slope) / scale, grid,
                           label="Re P", workers=workers, verbosity=verbosity)
    p0 = complex((slope[0] / params.kernel_quotient[0] - params.gamma) / scale)
    coefficients = herglotz_coefficients(F, params, count)
    largest = float(np.max(np.abs(coefficients))) if coefficients else 0.0
    verdict = positivity.verdict
    if abs(p0 - 1.0) > P0_TOL:
        verdict = Verdict.FAIL
    if verbosity >= Verbosity.DETAIL:
        logger.debug(f"Re P: P(0)={p0}, max |p_m|={largest:.6g} over {len(coefficients)} terms")
    return HerglotzReport(
        verdict=verdict,
        min_margin=positivity.min_margin,
        argmin_z=positivity.argmin_z,
        per_radius_min=positivity.per_radius_min,
        r_max=positivity.r_max,
        margin_tol=positivity.margin_tol,
        p0=p0,
        coefficients=coefficients,
        max_coefficient=largest,
        coefficient_bound_holds=largest <= CARATHEODORY_BOUND + BOUND_TOL,
    )
