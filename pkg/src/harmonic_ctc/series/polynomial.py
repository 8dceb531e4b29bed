"""Truncated complex power series and harmonic polynomial maps.

A :class:`ComplexPolynomial` is the Taylor polynomial a_0 + a_1 z + ... + a_N z^N
of an analytic function about 0. Everything in the package (u, v, phi, phi_k,
Phi_k, slices) is carried by this one type. Instances are immutable: the
coefficient array is made read-only at construction, so values can be shared
freely across threads.
"""

import cmath
import functools
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from harmonic_ctc.common.exceptions import (
    DenominatorNearZero,
    InvalidIndex,
    InvalidPolynomial,
    NonDivisible,
    NonUnimodularRotation,
    NormalizationError,
)
from harmonic_ctc.config.settings import get_settings

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, float, int]
ArrayLike = Union[ComplexLike, np.ndarray]

NORMALIZATION_TOL = 1e-12


def _freeze(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class ComplexPolynomial:
    """Coefficients a_0..a_N of a truncated Taylor series (a_m multiplies z^m).

    Trailing zeros are allowed; the truncation degree is ``len(coeffs) - 1``
    and is at least 1. NaN and infinite coefficients are rejected.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        values = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if values.size < 2:
            raise InvalidPolynomial(
                f"need at least 2 coefficients (truncation degree >= 1), got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidPolynomial("coefficients must be finite (no NaN/Inf)")
        object.__setattr__(self, 'coeffs', _freeze(values))

    @property
    def truncation_degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, m: int) -> complex:
        """Coefficient of z^m; zero beyond the truncation degree."""
        if m < 0:
            raise InvalidIndex(f"negative coefficient index {m}")
        if m > self.truncation_degree:
            return 0j
        return complex(self.coeffs[m])

    def __add__(self, other: 'ComplexPolynomial') -> 'ComplexPolynomial':
        degree = max(self.truncation_degree, other.truncation_degree)
        return ComplexPolynomial(self.pad(degree).coeffs + other.pad(degree).coeffs)

    def __sub__(self, other: 'ComplexPolynomial') -> 'ComplexPolynomial':
        degree = max(self.truncation_degree, other.truncation_degree)
        return ComplexPolynomial(self.pad(degree).coeffs - other.pad(degree).coeffs)

    def scale(self, factor: ComplexLike) -> 'ComplexPolynomial':
        return ComplexPolynomial(self.coeffs * complex(factor))

    def pad(self, degree: int) -> 'ComplexPolynomial':
        """Same series at a larger truncation degree (never truncates)."""
        if degree <= self.truncation_degree:
            return self
        padded = np.zeros(degree + 1, dtype=np.complex128)
        padded[:self.coeffs.size] = self.coeffs
        return ComplexPolynomial(padded)

    def truncate(self, degree: int) -> 'ComplexPolynomial':
        if degree >= self.truncation_degree:
            return self.pad(degree)
        return ComplexPolynomial(self.coeffs[:degree + 1])

    def equals(self, other: 'ComplexPolynomial', tol: float = 0.0) -> bool:
        degree = max(self.truncation_degree, other.truncation_degree)
        diff = self.pad(degree).coeffs - other.pad(degree).coeffs
        return bool(np.all(np.abs(diff) <= tol))

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        """True when the series reads z + a_2 z^2 + ..."""
        return abs(self.coeffs[0]) <= tol and abs(self.coeffs[1] - 1) <= tol

    def as_pairs(self):
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_coefficients(cls, values: Iterable[ComplexLike],
                          degree: Optional[int] = None) -> 'ComplexPolynomial':
        values = np.array(list(values), dtype=np.complex128)
        if degree is None:
            return cls(values)
        if values.size > degree + 1:
            if np.any(values[degree + 1:] != 0):
                raise InvalidPolynomial(
                    f"{values.size - 1}-degree coefficients do not fit truncation degree {degree}"
                )
            values = values[:degree + 1]
        return cls(values).pad(degree)

    @classmethod
    def zero(cls, degree: int) -> 'ComplexPolynomial':
        return cls(np.zeros(degree + 1, dtype=np.complex128))

    @classmethod
    def monomial(cls, m: int, coefficient: ComplexLike = 1, degree: Optional[int] = None) -> 'ComplexPolynomial':
        degree = max(m, 1) if degree is None else degree
        if m < 0 or m > degree:
            raise InvalidIndex(f"monomial degree {m} outside 0..{degree}")
        values = np.zeros(degree + 1, dtype=np.complex128)
        values[m] = coefficient
        return cls(values)

    @classmethod
    def identity(cls, degree: int = 1) -> 'ComplexPolynomial':
        """The series z."""
        return cls.monomial(1, 1, degree)

    @classmethod
    def geometric(cls, degree: Optional[int] = None) -> 'ComplexPolynomial':
        """Truncation of z/(1 - z) at ``degree`` (default: the ``truncation_degree`` setting)."""
        degree = get_settings().truncation_degree if degree is None else int(degree)
        values = np.ones(degree + 1, dtype=np.complex128)
        values[0] = 0
        return cls(values)


@dataclass(frozen=True, eq=False)
class HarmonicPolynomialMap:
    """f = u + conj(v) with u = z + sum u_m z^m and v = sum v_m z^m.

    u and v are padded to a common truncation degree on construction.
    """

    u: ComplexPolynomial
    v: ComplexPolynomial

    def __post_init__(self):
        degree = max(self.u.truncation_degree, self.v.truncation_degree)
        object.__setattr__(self, 'u', self.u.pad(degree))
        object.__setattr__(self, 'v', self.v.pad(degree))
        if not self.u.is_normalized():
            raise NormalizationError(
                f"analytic part must start z + ..., got u_0={self.u[0]}, u_1={self.u[1]}"
            )
        if abs(self.v[0]) > NORMALIZATION_TOL or abs(self.v[1]) > NORMALIZATION_TOL:
            raise NormalizationError(
                f"co-analytic part must start at z^2, got v_0={self.v[0]}, v_1={self.v[1]}"
            )

    @property
    def truncation_degree(self) -> int:
        return self.u.truncation_degree

    @functools.cached_property
    def u_prime(self) -> ComplexPolynomial:
        return derivative(self.u)

    @functools.cached_property
    def v_prime(self) -> ComplexPolynomial:
        return derivative(self.v)

    @classmethod
    def from_parts(cls, u_coeffs: Sequence[ComplexLike], v_coeffs: Sequence[ComplexLike] = (0, 0)) -> 'HarmonicPolynomialMap':
        return cls(ComplexPolynomial.from_coefficients(u_coeffs),
                   ComplexPolynomial.from_coefficients(v_coeffs))

    @classmethod
    def analytic(cls, u: ComplexPolynomial) -> 'HarmonicPolynomialMap':
        """The map u with v identically 0."""
        return cls(u, ComplexPolynomial.zero(u.truncation_degree))

    @classmethod
    def monomial_conjugate(cls, m: int, coefficient: ComplexLike,
                           degree: Optional[int] = None) -> 'HarmonicPolynomialMap':
        """z + c * conj(z)^m."""
        degree = max(m, 2) if degree is None else degree
        return cls(ComplexPolynomial.identity(degree),
                   ComplexPolynomial.monomial(m, coefficient, degree))


def evaluate(p: ComplexPolynomial, z: ComplexLike) -> complex:
    """Horner evaluation of p at a single point."""
    return complex(npoly.polyval(complex(z), p.coeffs))


def evaluate_many(p: ComplexPolynomial, zs: np.ndarray) -> np.ndarray:
    """Horner evaluation of p at every entry of ``zs`` (any shape)."""
    return npoly.polyval(np.asarray(zs, dtype=np.complex128), p.coeffs)


def derivative(p: ComplexPolynomial) -> ComplexPolynomial:
    """Term-by-term derivative, padded back to the input truncation degree."""
    values = np.zeros_like(p.coeffs)
    slope = npoly.polyder(p.coeffs)
    values[:slope.size] = slope
    return ComplexPolynomial(values)


def multiply(p: ComplexPolynomial, q: ComplexPolynomial, degree: Optional[int] = None) -> ComplexPolynomial:
    """Cauchy product truncated at ``degree`` (default: the larger input degree)."""
    if degree is None:
        degree = max(p.truncation_degree, q.truncation_degree)
    if degree < 1:
        raise InvalidIndex(f"truncation degree must be >= 1, got {degree}")
    product = np.convolve(p.coeffs, q.coeffs)[:degree + 1]
    return ComplexPolynomial(product).pad(degree)


def _check_unimodular(omega: complex, tol: Optional[float]) -> None:
    tol = get_settings().unimodular_tol if tol is None else tol
    if not cmath.isfinite(omega) or abs(abs(omega) - 1.0) > tol:
        raise NonUnimodularRotation(f"|{omega}| = {abs(omega)!r} is not 1 within {tol}")


def rotate(p: ComplexPolynomial, omega: ComplexLike, tol: Optional[float] = None) -> ComplexPolynomial:
    """Coefficients of z -> p(omega z), i.e. a_m * omega^m."""
    omega = complex(omega)
    _check_unimodular(omega, tol)
    powers = omega ** np.arange(p.coeffs.size)
    return ComplexPolynomial(p.coeffs * powers)


def divide_by_power(p: ComplexPolynomial, j: int, tol: Optional[float] = None) -> ComplexPolynomial:
    """p(z) / z^j, keeping the truncation degree (top j slots become 0).

    Raises:
        NonDivisible: if one of a_0..a_{j-1} exceeds ``tol`` in magnitude.
    """
    if j < 0:
        raise InvalidIndex(f"power must be >= 0, got {j}")
    tol = get_settings().divide_tol if tol is None else tol
    if j == 0:
        return p
    head = np.abs(p.coeffs[:j])
    if np.any(head > tol):
        first = int(np.argmax(head > tol))
        raise NonDivisible(
            f"coefficient of z^{first} is {complex(p.coeffs[first])}, cannot divide by z^{j}"
        )
    shifted = np.zeros_like(p.coeffs)
    shifted[:max(p.coeffs.size - j, 0)] = p.coeffs[j:]
    return ComplexPolynomial(shifted)


def series_divide(num: ComplexPolynomial, den: ComplexPolynomial,
                  degree: Optional[int] = None, tol: Optional[float] = None) -> ComplexPolynomial:
    """Truncated power series of num/den by recursive coefficient solving.

    q_n = (a_n - sum_{j=1..n} d_j q_{n-j}) / d_0.
    """
    degree = max(num.truncation_degree, den.truncation_degree) if degree is None else degree
    tol = get_settings().divide_tol if tol is None else tol
    d0 = den[0]
    if abs(d0) <= tol:
        raise DenominatorNearZero(f"series denominator has |d_0| = {abs(d0)!r}", z=0j)
    a = num.pad(degree).coeffs
    d = den.pad(degree).coeffs
    q = np.zeros(degree + 1, dtype=np.complex128)
    for n in range(degree + 1):
        acc = a[n] - np.dot(d[1:n + 1], q[n - 1::-1]) if n else a[0]
        q[n] = acc / d0
    return ComplexPolynomial(q)


def eval_harmonic(f: HarmonicPolynomialMap, z: ComplexLike) -> complex:
    """f(z) = u(z) + conj(v(z))."""
    return evaluate(f.u, z) + evaluate(f.v, z).conjugate()


def eval_harmonic_many(f: HarmonicPolynomialMap, zs: np.ndarray) -> np.ndarray:
    return evaluate_many(f.u, zs) + np.conj(evaluate_many(f.v, zs))


def jacobian(f: HarmonicPolynomialMap, z: ComplexLike) -> float:
    """|u'(z)|^2 - |v'(z)|^2; positive exactly where f is sense-preserving."""
    return abs(evaluate(f.u_prime, z)) ** 2 - abs(evaluate(f.v_prime, z)) ** 2


def jacobian_many(f: HarmonicPolynomialMap, zs: np.ndarray) -> np.ndarray:
    return np.abs(evaluate_many(f.u_prime, zs)) ** 2 - np.abs(evaluate_many(f.v_prime, zs)) ** 2
