"""Image curves of harmonic maps and their shape diagnostics.

A curve is the image of |z| = r sampled at n equispaced angles. Starlikeness
about the origin is read off the discrete argument increments of the image
points, convexity off the turning of the edge directions. Both margins are
per-step angles, so ``angle_tol`` scales with 2*pi/n. A margin at or above
-angle_tol passes, one down to -BORDERLINE_FACTOR * angle_tol is reported
INCONCLUSIVE, and anything lower fails.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from harmonic_ctc.classes.constructs import MarginReport, SamplingGrid, scan_grid
from harmonic_ctc.common.exceptions import (
    BadInputException,
    DegenerateEdge,
    OriginOnCurve,
    RadiusOutOfRange,
)
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.config.verbosity import Verbosity
from harmonic_ctc.series.polynomial import (
    HarmonicPolynomialMap,
    eval_harmonic_many,
    jacobian_many,
)

logger = logging.getLogger(__name__)

MIN_SAMPLES = 64
ORIGIN_CLEARANCE = 1e-9
EDGE_CLEARANCE = 1e-14
ANGLE_TOL_SCALE = 1e-3
BORDERLINE_FACTOR = 10.0


def _check_radius(r: float) -> float:
    r = float(r)
    if not 0.0 < r < 1.0:
        raise RadiusOutOfRange(f"radius must lie in (0, 1), got {r}")
    return r


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Image of the circle |z| = radius, points[j] = f(radius * e^(2 pi i j / n))."""

    radius: float
    points: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=np.complex128).reshape(-1)
        if points.size < MIN_SAMPLES:
            raise BadInputException(f"a boundary curve needs at least {MIN_SAMPLES} samples, got {points.size}")
        if not np.all(np.isfinite(points)):
            raise BadInputException("boundary curve contains non-finite points")
        points.setflags(write=False)
        object.__setattr__(self, 'points', points)

    @property
    def closed(self) -> bool:
        return True

    @property
    def samples(self) -> int:
        return int(self.points.size)

    @property
    def angle_tol(self) -> float:
        return ANGLE_TOL_SCALE * 2.0 * math.pi / self.samples


@dataclass(frozen=True)
class ShapeDiagnostic:
    """Both shape verdicts for one curve.

    Margins are the smallest per-step angle (radians); NaN when that part of
    the diagnostic could not run on the curve.
    """

    starlike_margin: float
    convex_margin: float
    winding: int
    turning: int
    verdict_starlike: Verdict
    verdict_convex: Verdict
    angle_tol: float
    samples: int

    def as_dict(self):
        return {
            "starlike_margin": self.starlike_margin,
            "convex_margin": self.convex_margin,
            "winding": self.winding,
            "turning": self.turning,
            "verdict_starlike": self.verdict_starlike.value,
            "verdict_convex": self.verdict_convex.value,
            "angle_tol": self.angle_tol,
            "samples": self.samples,
        }


def image_boundary(f: HarmonicPolynomialMap, r: float, n: Optional[int] = None) -> BoundaryCurve:
    """Sample f on |z| = r; n defaults to the ``boundary_samples`` setting."""
    r = _check_radius(r)
    n = get_settings().boundary_samples if n is None else int(n)
    if n < MIN_SAMPLES:
        raise BadInputException(f"n must be at least {MIN_SAMPLES}, got {n}")
    theta = 2.0 * np.pi * np.arange(n) / n
    return BoundaryCurve(r, eval_harmonic_many(f, r * np.exp(1j * theta)))


def image_ray(f: HarmonicPolynomialMap, angle: float, r_max: float, samples: int = 128) -> np.ndarray:
    """Image of the radial segment from 0 to r_max * e^(i angle), origin included."""
    r_max = _check_radius(r_max)
    if samples < 2:
        raise BadInputException(f"a ray needs at least 2 samples, got {samples}")
    radii = np.linspace(0.0, r_max, samples)
    return eval_harmonic_many(f, radii * np.exp(1j * angle))


def sense_preserving_check(f: HarmonicPolynomialMap, grid: Optional[SamplingGrid] = None,
                           workers: Optional[int] = None,
                           verbosity: Verbosity = Verbosity.ONCE) -> MarginReport:
    """Minimum Jacobian |u'|^2 - |v'|^2 over the grid."""
    grid = SamplingGrid.default() if grid is None else grid
    return scan_grid(lambda zs: jacobian_many(f, zs), grid,
                     label="sense preservation", workers=workers, verbosity=verbosity)


def _arg_increments(points: np.ndarray) -> Tuple[float, int]:
    if np.min(np.abs(points)) <= ORIGIN_CLEARANCE:
        raise OriginOnCurve(f"image curve passes within {ORIGIN_CLEARANCE} of the origin")
    steps = np.angle(np.roll(points, -1) / points)
    winding = int(round(float(np.sum(steps)) / (2.0 * math.pi)))
    return float(np.min(steps)), winding


def _turning_increments(points: np.ndarray) -> Tuple[float, int]:
    edges = np.roll(points, -1) - points
    if np.min(np.abs(edges)) <= EDGE_CLEARANCE:
        raise DegenerateEdge(f"consecutive curve points coincide within {EDGE_CLEARANCE}")
    steps = np.angle(np.roll(edges, -1) / edges)
    turning = int(round(float(np.sum(steps)) / (2.0 * math.pi)))
    return float(np.min(steps)), turning


def _rate_verdict(margin: float, angle_tol: float) -> Verdict:
    if margin >= -angle_tol:
        return Verdict.PASS
    if margin >= -BORDERLINE_FACTOR * angle_tol:
        return Verdict.INCONCLUSIVE
    return Verdict.FAIL


def _starlike_verdict(margin: float, winding: int, angle_tol: float) -> Verdict:
    if winding != 1:
        return Verdict.FAIL
    return _rate_verdict(margin, angle_tol)


def _convex_verdict(margin: float, turning: int, winding: Optional[int], angle_tol: float) -> Verdict:
    rate = _rate_verdict(margin, angle_tol)
    if turning != 1 or rate is Verdict.FAIL:
        return Verdict.FAIL
    if winding is None:
        # origin on the curve: convex turning alone cannot place 0 inside
        return Verdict.INCONCLUSIVE
    return rate if winding == 1 else Verdict.FAIL


def _diagnose(curve: BoundaryCurve, strict_starlike: bool, strict_convex: bool) -> ShapeDiagnostic:
    tol = curve.angle_tol
    try:
        star_margin, winding = _arg_increments(curve.points)
        star_verdict = _starlike_verdict(star_margin, winding, tol)
    except OriginOnCurve:
        if strict_starlike:
            raise
        star_margin, winding, star_verdict = math.nan, None, Verdict.INCONCLUSIVE
    try:
        convex_margin, turning = _turning_increments(curve.points)
        convex_verdict = _convex_verdict(convex_margin, turning, winding, tol)
    except DegenerateEdge:
        if strict_convex:
            raise
        convex_margin, turning, convex_verdict = math.nan, 0, Verdict.INCONCLUSIVE
    diagnostic = ShapeDiagnostic(
        starlike_margin=star_margin,
        convex_margin=convex_margin,
        winding=0 if winding is None else winding,
        turning=turning,
        verdict_starlike=star_verdict,
        verdict_convex=convex_verdict,
        angle_tol=tol,
        samples=curve.samples,
    )
    logger.debug(f"shape r={curve.radius}: starlike {star_verdict.value} ({star_margin:.6g}), "
                 f"convex {convex_verdict.value} ({convex_margin:.6g}), winding {diagnostic.winding}")
    return diagnostic


def starlike_diagnostic(curve: BoundaryCurve) -> ShapeDiagnostic:
    """Starlikeness about the origin.

    Raises:
        OriginOnCurve: a curve point lies within 1e-9 of 0.
    """
    return _diagnose(curve, strict_starlike=True, strict_convex=False)


def convex_diagnostic(curve: BoundaryCurve) -> ShapeDiagnostic:
    """Convexity from the turning of consecutive edges; total turning must be one full turn.

    Raises:
        DegenerateEdge: consecutive points coincide within 1e-14.
    """
    return _diagnose(curve, strict_starlike=False, strict_convex=True)


def diagnose_shape(curve: BoundaryCurve) -> ShapeDiagnostic:
    """Both verdicts, never raising; a part that cannot run reports INCONCLUSIVE."""
    return _diagnose(curve, strict_starlike=False, strict_convex=False)
