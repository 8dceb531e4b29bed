"""Class machinery for KH0(k, gamma).

Builds the k-fold rotation product phi_k and its normalized quotient
Phi_k = phi_k / z^(k-1), evaluates the defining margins of the analytic class
K(k, gamma) and of the harmonic class KH0(k, gamma), and certifies them on a
radius/angle grid.

Margins are evaluated through Q = Phi_k / z, which satisfies Q(0) = 1, so the
order-k zero of phi_k at the origin never enters a floating-point quotient:

    z u'(z) / Phi_k(z) = u'(z) / Q(z).
"""

import cmath
import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from harmonic_ctc.common.exceptions import (
    BadInputException,
    DenominatorNearZero,
    InvalidGrid,
    NonUnimodularRotation,
    NormalizationError,
    TruncationTooSmall,
)
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.config.verbosity import Verbosity
from harmonic_ctc.io.workers import map_ordered
from harmonic_ctc.series.polynomial import (
    ComplexPolynomial,
    HarmonicPolynomialMap,
    derivative,
    divide_by_power,
    evaluate_many,
    multiply,
)

logger = logging.getLogger(__name__)

MIN_ANGLES = 16


@dataclass(frozen=True, eq=False)
class ClassParams:
    """Identifies one class instance KH0(k, gamma) with starlike generator phi."""

    k: int
    gamma: float
    phi: ComplexPolynomial = field(default_factory=ComplexPolynomial.identity)

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise BadInputException(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, 'k', int(self.k))
        gamma = float(self.gamma)
        if not (0.0 <= gamma < 1.0):
            raise BadInputException(f"gamma must lie in [0, 1), got {self.gamma!r}")
        object.__setattr__(self, 'gamma', gamma)
        if not self.phi.is_normalized():
            raise NormalizationError(
                f"phi must start z + ..., got c_0={self.phi[0]}, c_1={self.phi[1]}"
            )

    @property
    def kernel_degree(self) -> int:
        """Degree holding the full product of k copies of phi."""
        return self.k * self.phi.truncation_degree

    @property
    def phi_order(self) -> float:
        """Required starlikeness order (k - 1)/k of phi."""
        return (self.k - 1) / self.k

    @functools.cached_property
    def starlike_kernel(self) -> ComplexPolynomial:
        """Phi_k at the full kernel degree."""
        return build_Phi_k(self, self.kernel_degree)

    @functools.cached_property
    def kernel_quotient(self) -> ComplexPolynomial:
        """Q = Phi_k / z, with Q(0) = 1."""
        return divide_by_power(self.starlike_kernel, 1)

    def describe(self) -> str:
        notes = [f"KH0(k={self.k}, gamma={self.gamma!r})"]
        if self.k == 2:
            notes.append("k = 2: the analytic members form the class K(gamma)")
            if self.gamma == 0:
                notes.append("k = 2, gamma = 0: the analytic members form K_s")
        if self.phi.equals(ComplexPolynomial.identity(self.phi.truncation_degree)):
            notes.append("phi = z: margins do not depend on k")
        return "; ".join(notes)


@dataclass(frozen=True)
class SamplingGrid:
    """Concentric circles |z| = r_i, each sampled at ``angles`` equispaced points."""

    radii: Tuple[float, ...]
    angles: int
    margin_tol: float

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, 'radii', radii)
        if not radii:
            raise InvalidGrid("radii must be nonempty")
        if any(not (0.0 < r < 1.0) for r in radii):
            raise InvalidGrid(f"radii must lie in (0, 1), got {radii}")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise InvalidGrid(f"radii must be strictly increasing, got {radii}")
        if int(self.angles) != self.angles or self.angles < MIN_ANGLES:
            raise InvalidGrid(f"angles must be an integer >= {MIN_ANGLES}, got {self.angles}")
        # JSON may spell 2048 as 2048.0; indexing needs a real int
        object.__setattr__(self, 'angles', int(self.angles))
        if not self.margin_tol > 0:
            raise InvalidGrid(f"margin_tol must be positive, got {self.margin_tol}")

    @property
    def r_max(self) -> float:
        return self.radii[-1]

    @classmethod
    def default(cls) -> 'SamplingGrid':
        settings = get_settings()
        return cls(settings.grid_radii, settings.grid_angles, settings.margin_tol)

    @classmethod
    def with_overrides(cls, r_max: Optional[float] = None, angles: Optional[int] = None,
                       tol: Optional[float] = None) -> 'SamplingGrid':
        """Default ladder cut at ``r_max`` (which becomes the outermost circle)."""
        base = cls.default()
        radii = base.radii
        if r_max is not None:
            radii = tuple(r for r in radii if r < r_max) + (float(r_max),)
        return cls(radii,
                   base.angles if angles is None else angles,
                   base.margin_tol if tol is None else tol)

    def circle(self, radius: float) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(self.angles) / self.angles
        return radius * np.exp(1j * theta)

    def points(self) -> np.ndarray:
        """All grid points, shape (len(radii), angles), radius-major."""
        return np.stack([self.circle(r) for r in self.radii])

    def as_dict(self):
        return {"radii": list(self.radii), "angles": self.angles,
                "margin_tol": self.margin_tol, "r_max": self.r_max}


@dataclass(frozen=True)
class MarginReport:
    """Outcome of a grid certification.

    ``per_radius_min`` lists (radius, minimum margin on that circle); the
    origin is scanned too and wins ties, followed by (radius, angle index).
    """

    verdict: Verdict
    min_margin: float
    argmin_z: complex
    per_radius_min: Tuple[Tuple[float, float], ...]
    r_max: float
    margin_tol: float

    def as_dict(self):
        return {
            "verdict": self.verdict.value,
            "min_margin": self.min_margin,
            "argmin_z": self.argmin_z,
            "per_radius_min": [list(pair) for pair in self.per_radius_min],
            "r_max": self.r_max,
            "margin_tol": self.margin_tol,
        }


def _unit_roots(k: int) -> np.ndarray:
    """mu^j for mu = exp(2 pi i / k), exact at quarter turns."""
    exact = {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}
    roots = np.empty(k, dtype=np.complex128)
    for j in range(k):
        if (4 * j) % k == 0:
            roots[j] = exact[(4 * j) // k]
        else:
            roots[j] = cmath.exp(2j * math.pi * j / k)
    return roots


def build_phi_k(params: ClassParams, N: Optional[int] = None) -> ComplexPolynomial:
    """phi_k(z) = prod_{v=0}^{k-1} mu^{-v} phi(mu^v z), truncated at degree N.

    The v-th factor has coefficients c_m mu^{v(m-1)}; its z coefficient is
    exactly 1, so the product starts with exactly z^k.

    Raises:
        TruncationTooSmall: if N < k.
    """
    k = params.k
    N = params.kernel_degree if N is None else N
    if N < k:
        raise TruncationTooSmall(f"truncation degree {N} cannot hold phi_k, which starts at z^{k}")
    roots = _unit_roots(k)
    phi = params.phi.truncate(N)
    exponents = np.maximum(np.arange(phi.coeffs.size) - 1, 0)
    product = phi
    for v in range(1, k):
        factor = ComplexPolynomial(phi.coeffs * roots[(v * exponents) % k])
        product = multiply(product, factor, N)
    return product.pad(N)


def build_Phi_k(params: ClassParams, N: Optional[int] = None) -> ComplexPolynomial:
    """Phi_k = phi_k / z^(k-1); its coefficients are the C_m.

    Raises:
        NonDivisible: when phi_k does not vanish to order k-1 (defective phi).
    """
    return divide_by_power(build_phi_k(params, N), params.k - 1)


def _checked_quotient(kernel: ComplexPolynomial, zs: np.ndarray) -> np.ndarray:
    """Values of kernel at zs, failing where z * kernel(z) is numerically 0 away from 0."""
    values = evaluate_many(kernel, zs)
    floor = get_settings().denominator_floor
    bad = (np.abs(zs) > 0) & (np.abs(zs * values) < floor)
    if np.any(bad):
        z = complex(zs[bad].flat[0])
        raise DenominatorNearZero(f"|Phi_k(z)| < {floor} at z = {z}", z=z)
    return values


def harmonic_margin_many(f: HarmonicPolynomialMap, params: ClassParams, zs: np.ndarray) -> np.ndarray:
    zs = np.asarray(zs, dtype=np.complex128)
    q = _checked_quotient(params.kernel_quotient, zs)
    analytic = evaluate_many(f.u_prime, zs) / q
    coanalytic = evaluate_many(f.v_prime, zs) / q
    return analytic.real - params.gamma - np.abs(coanalytic)


def harmonic_margin(f: HarmonicPolynomialMap, params: ClassParams, z: complex) -> float:
    """Re(z u'/Phi_k) - gamma - |z v'/Phi_k|; equals 1 - gamma at z = 0."""
    return float(harmonic_margin_many(f, params, np.array([z]))[0])


def _require_normalized(F: ComplexPolynomial) -> None:
    if not F.is_normalized():
        raise NormalizationError(f"analytic function must start z + ..., got F_0={F[0]}, F_1={F[1]}")


def analytic_margin_many(F: ComplexPolynomial, params: ClassParams, zs: np.ndarray,
                         slope: Optional[ComplexPolynomial] = None) -> np.ndarray:
    zs = np.asarray(zs, dtype=np.complex128)
    q = _checked_quotient(params.kernel_quotient, zs)
    slope = derivative(F) if slope is None else slope
    return (evaluate_many(slope, zs) / q).real - params.gamma


def analytic_margin(F: ComplexPolynomial, params: ClassParams, z: complex) -> float:
    """Re(z F'/Phi_k) - gamma, the defining margin of K(k, gamma)."""
    _require_normalized(F)
    return float(analytic_margin_many(F, params, np.array([z]))[0])


def scan_grid(margin_fn: Callable[[np.ndarray], np.ndarray], grid: SamplingGrid,
              label: str = "margin", workers: Optional[int] = None,
              verbosity: Verbosity = Verbosity.ONCE) -> MarginReport:
    """Evaluate ``margin_fn`` on the origin and every grid circle and reduce.

    Circles may be evaluated concurrently; the reduction is a single argmin
    over [origin, circle_0 angles..., circle_1 angles...], so ties go to the
    origin and then to the lexicographically smallest (radius, angle index).
    """
    origin = np.asarray(margin_fn(np.zeros(1, dtype=np.complex128)), dtype=float)
    rows = map_ordered(lambda r: np.asarray(margin_fn(grid.circle(r)), dtype=float),
                       grid.radii, workers)
    values = np.concatenate([origin] + rows)
    best = int(np.argmin(values))
    if best == 0:
        argmin_z = 0j
    else:
        ring, angle = divmod(best - 1, grid.angles)
        argmin_z = complex(grid.circle(grid.radii[ring])[angle])
    min_margin = float(values[best])
    per_radius = tuple((r, float(row.min())) for r, row in zip(grid.radii, rows))
    report = MarginReport(
        verdict=Verdict.classify(min_margin, grid.margin_tol),
        min_margin=min_margin,
        argmin_z=argmin_z,
        per_radius_min=per_radius,
        r_max=grid.r_max,
        margin_tol=grid.margin_tol,
    )
    if verbosity >= Verbosity.ONCE:
        logger.info(f"{label}: {report.verdict.value} min={min_margin:.6g} at z={argmin_z:.6g} "
                    f"(r_max={grid.r_max}, {grid.angles} angles)")
    if verbosity >= Verbosity.DETAIL:
        for radius, value in per_radius:
            logger.debug(f"{label}: r={radius} min={value:.6g}")
    return report


def check_membership(f: HarmonicPolynomialMap, params: ClassParams,
                     grid: Optional[SamplingGrid] = None, workers: Optional[int] = None,
                     verbosity: Verbosity = Verbosity.ONCE) -> MarginReport:
    """Grid certification of f in KH0(k, gamma). PASS is numerical evidence up to r_max."""
    grid = SamplingGrid.default() if grid is None else grid
    return scan_grid(lambda zs: harmonic_margin_many(f, params, zs), grid,
                     label="membership", workers=workers, verbosity=verbosity)


def check_analytic_membership(F: ComplexPolynomial, params: ClassParams,
                              grid: Optional[SamplingGrid] = None, workers: Optional[int] = None,
                              verbosity: Verbosity = Verbosity.ONCE) -> MarginReport:
    """Grid certification of F in K(k, gamma)."""
    _require_normalized(F)
    grid = SamplingGrid.default() if grid is None else grid
    slope = derivative(F)
    return scan_grid(lambda zs: analytic_margin_many(F, params, zs, slope), grid,
                     label="analytic membership", workers=workers, verbosity=verbosity)


def close_to_convex_order(F: ComplexPolynomial, params: ClassParams,
                          grid: Optional[SamplingGrid] = None,
                          workers: Optional[int] = None) -> MarginReport:
    """Sampled infimum of Re(z F'/Phi_k): F is close-to-convex of that order on the grid."""
    unshifted = ClassParams(params.k, 0.0, params.phi)
    return check_analytic_membership(F, unshifted, grid, workers, verbosity=Verbosity.SILENT)


def slice_map(f: HarmonicPolynomialMap, epsilon: complex, tol: Optional[float] = None) -> ComplexPolynomial:
    """F_eps = u + eps v for |eps| = 1."""
    epsilon = complex(epsilon)
    tol = get_settings().unimodular_tol if tol is None else tol
    if not cmath.isfinite(epsilon) or abs(abs(epsilon) - 1.0) > tol:
        raise NonUnimodularRotation(f"|{epsilon}| = {abs(epsilon)!r} is not 1 within {tol}")
    return ComplexPolynomial(f.u.coeffs + epsilon * f.v.coeffs)


def epsilon_mesh(size: Optional[int] = None) -> np.ndarray:
    """``size`` equispaced points on the unit circle, starting at 1."""
    size = get_settings().epsilon_mesh if size is None else size
    return np.exp(2j * np.pi * np.arange(size) / size)


def check_slices(f: HarmonicPolynomialMap, params: ClassParams,
                 grid: Optional[SamplingGrid] = None, mesh: Optional[int] = None,
                 workers: Optional[int] = None) -> Tuple[complex, MarginReport]:
    """Certify every slice F_eps on an eps mesh; return the worst (eps, report)."""
    grid = SamplingGrid.default() if grid is None else grid
    worst: Optional[Tuple[complex, MarginReport]] = None
    for epsilon in epsilon_mesh(mesh):
        report = check_analytic_membership(slice_map(f, epsilon), params, grid, workers,
                                           verbosity=Verbosity.SILENT)
        if worst is None or report.min_margin < worst[1].min_margin:
            worst = (complex(epsilon), report)
    logger.info(f"slices: worst eps={worst[0]:.6g} min={worst[1].min_margin:.6g}")
    return worst


def _order_margin_many(phi: ComplexPolynomial, alpha: float, zs: np.ndarray) -> np.ndarray:
    zs = np.asarray(zs, dtype=np.complex128)
    quotient = divide_by_power(phi, 1)
    q = evaluate_many(quotient, zs)
    floor = get_settings().denominator_floor
    bad = (np.abs(zs) > 0) & (np.abs(zs * q) < floor)
    if np.any(bad):
        z = complex(zs[bad].flat[0])
        raise DenominatorNearZero(f"phi vanishes at z = {z}", z=z)
    return (evaluate_many(derivative(phi), zs) / q).real - alpha


def check_phi_order(phi: ComplexPolynomial, alpha: float,
                    grid: Optional[SamplingGrid] = None, workers: Optional[int] = None,
                    verbosity: Verbosity = Verbosity.ONCE) -> MarginReport:
    """Certify Re(z phi'/phi) > alpha on the grid (phi starlike of order alpha).

    Use alpha = (k-1)/k for the class precondition on phi and alpha = 0 for
    the starlikeness of Phi_k.
    """
    _require_normalized(phi)
    grid = SamplingGrid.default() if grid is None else grid
    return scan_grid(lambda zs: _order_margin_many(phi, alpha, zs), grid,
                     label=f"starlike order {alpha:.6g}", workers=workers, verbosity=verbosity)
