"""Distortion envelopes for KH0(k, gamma).

Modulus bounds are the series
    r + sum_{m>=2} (+-1)^{m-1} [m(1-gamma) + gamma] r^m,
derivative bounds are
    (1 + (1 - 2 gamma) r)/(1 - r)^3   and   (1 - (1 - 2 gamma) r)/(1 + r)^3,
together with their series presentations. Integrating the derivative closed
forms from 0 to r gives closed forms for the modulus bounds too:
    upper = (1 - gamma) r/(1 - r)^2 + gamma r/(1 - r)
    lower = (1 - gamma) r/(1 + r)^2 + gamma r/(1 + r)
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from harmonic_ctc.common.exceptions import BadInputException, InvalidIndex, RadiusOutOfRange
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.series.polynomial import (
    ComplexPolynomial,
    HarmonicPolynomialMap,
    eval_harmonic_many,
)
from harmonic_ctc.theorems.coefficients import coefficient_sum_bound

logger = logging.getLogger(__name__)

MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class DistortionEnvelope:
    gamma: float
    radius: float
    n_terms: int
    lower_modulus: float
    upper_modulus: float
    lower_modulus_closed: float
    upper_modulus_closed: float
    lower_derivative: float
    upper_derivative: float
    lower_derivative_series: float
    upper_derivative_series: float
    tail_bound: float

    def as_dict(self):
        return dict(self.__dict__)


def _validate(gamma: float, r: float) -> Tuple[float, float]:
    gamma, r = float(gamma), float(r)
    if not (0.0 <= gamma < 1.0):
        raise BadInputException(f"gamma must lie in [0, 1), got {gamma!r}")
    if not (0.0 <= r < 1.0):
        raise RadiusOutOfRange(f"radius must lie in [0, 1), got {r!r}")
    return gamma, r


def modulus_tail_bound(r: float, n_terms: int) -> float:
    """sum_{m>n} m r^m, which dominates the tail of either modulus series."""
    if r == 0.0:
        return 0.0
    n = n_terms
    return r ** (n + 1) * ((n + 1) - n * r) / (1.0 - r) ** 2


def terms_for_tail(r: float, tol: Optional[float] = None) -> int:
    """Smallest n >= 2 whose modulus tail bound is below ``tol``."""
    tol = get_settings().tail_tol if tol is None else tol
    n = 2
    while modulus_tail_bound(r, n) >= tol:
        n += 1
        if n > MAX_TERMS:
            raise RadiusOutOfRange(f"radius {r} needs more than {MAX_TERMS} terms for tail {tol}")
    return n


def distortion_closed_form_modulus(gamma: float, r: float) -> Tuple[float, float]:
    gamma, r = _validate(gamma, r)
    upper = (1.0 - gamma) * r / (1.0 - r) ** 2 + gamma * r / (1.0 - r)
    lower = (1.0 - gamma) * r / (1.0 + r) ** 2 + gamma * r / (1.0 + r)
    return lower, upper


def derivative_closed_form(gamma: float, r: float) -> Tuple[float, float]:
    gamma, r = _validate(gamma, r)
    upper = (1.0 + (1.0 - 2.0 * gamma) * r) / (1.0 - r) ** 3
    lower = (1.0 - (1.0 - 2.0 * gamma) * r) / (1.0 + r) ** 3
    return lower, upper


def derivative_series(gamma: float, r: float, n_terms: int) -> Tuple[float, float]:
    """Partial sums 1 + sum_{m=2}^{n} (+-1)^{m-1} m [m(1-gamma)+gamma] r^{m-1}."""
    gamma, r = _validate(gamma, r)
    m = np.arange(2, n_terms + 1)
    terms = m * coefficient_sum_bound(m, gamma) * r ** (m - 1)
    signs = np.where(m % 2 == 0, -1.0, 1.0)
    return 1.0 + float(np.sum(signs * terms)), 1.0 + float(np.sum(terms))


def distortion_envelope(gamma: float, r: float, n_terms: Optional[int] = None) -> DistortionEnvelope:
    """Two-sided bounds on |f(z)| and |f_z| +- |f_zbar| at |z| = r.

    Modulus bounds are partial sums (``n_terms`` defaults to the count that
    pushes the tail bound below the configured ``tail_tol``); derivative
    bounds are the closed forms, with the series sums reported alongside.
    """
    gamma, r = _validate(gamma, r)
    n = terms_for_tail(r) if n_terms is None else int(n_terms)
    if n < 2:
        raise InvalidIndex(f"n_terms must be >= 2, got {n_terms!r}")
    m = np.arange(2, n + 1)
    coefficients = coefficient_sum_bound(m, gamma)
    powers = r ** m
    signs = np.where(m % 2 == 0, -1.0, 1.0)
    upper_modulus = r + float(np.sum(coefficients * powers))
    lower_modulus = r + float(np.sum(signs * coefficients * powers))
    lower_closed, upper_closed = distortion_closed_form_modulus(gamma, r)
    lower_derivative, upper_derivative = derivative_closed_form(gamma, r)
    lower_series, upper_series = derivative_series(gamma, r, n)
    return DistortionEnvelope(
        gamma=gamma,
        radius=r,
        n_terms=n,
        lower_modulus=lower_modulus,
        upper_modulus=upper_modulus,
        lower_modulus_closed=lower_closed,
        upper_modulus_closed=upper_closed,
        lower_derivative=lower_derivative,
        upper_derivative=upper_derivative,
        lower_derivative_series=lower_series,
        upper_derivative_series=upper_series,
        tail_bound=modulus_tail_bound(r, n),
    )


def sharp_distortion_map(gamma: float, degree: Optional[int] = None) -> HarmonicPolynomialMap:
    """Truncation of z + sum [m(1-gamma)+gamma] z^m, which meets the upper modulus bound on (0, 1).

    ``degree`` defaults to the ``truncation_degree`` setting.
    """
    degree = get_settings().truncation_degree if degree is None else int(degree)
    m = np.arange(degree + 1)
    values = coefficient_sum_bound(m, float(gamma)).astype(np.complex128)
    values[0] = 0
    values[1] = 1
    return HarmonicPolynomialMap.analytic(ComplexPolynomial(values))


def envelope_holds(f: HarmonicPolynomialMap, gamma: float, radii: Iterable[float],
                   samples: int = 256, tol: float = 1e-12) -> Tuple[bool, float]:
    """Check lower <= |f(z)| <= upper on sampled circles.

    Returns:
        (holds, smallest slack seen across both sides and all circles)
    """
    theta = 2.0 * np.pi * np.arange(samples) / samples
    worst = np.inf
    for r in radii:
        lower, upper = distortion_closed_form_modulus(gamma, r)
        modulus = np.abs(eval_harmonic_many(f, r * np.exp(1j * theta)))
        worst = min(worst, float(np.min(modulus - lower)), float(np.min(upper - modulus)))
    return worst >= -tol, worst
