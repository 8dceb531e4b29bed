import math
import unittest

import numpy as np

from harmonic_ctc.classes.constructs import SamplingGrid, check_membership
from harmonic_ctc.common.exceptions import (
    BadInputException,
    DegenerateEdge,
    OriginOnCurve,
    RadiusOutOfRange,
)
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import Settings
from harmonic_ctc.corpus.examples import BUILTIN_CORPUS, corpus_entry, random_sufficient_maps
from harmonic_ctc.geometry.shape import (
    BoundaryCurve,
    convex_diagnostic,
    diagnose_shape,
    image_boundary,
    image_ray,
    sense_preserving_check,
    starlike_diagnostic,
)
from harmonic_ctc.series.polynomial import ComplexPolynomial, HarmonicPolynomialMap

FIGURE_RADIUS = 0.999


def circle(center=0j, radius=1.0, n=256):
    theta = 2.0 * np.pi * np.arange(n) / n
    return center + radius * np.exp(1j * theta)


def identity_map():
    return HarmonicPolynomialMap.analytic(ComplexPolynomial.identity())


class TestBoundaryCurve(unittest.TestCase):
    """Test cases for sampled boundary curves."""

    def test_samples_and_tolerance(self):
        """Test the sample count, angle tolerance and read-only points."""
        curve = BoundaryCurve(0.5, circle(n=128))
        self.assertEqual(curve.samples, 128)
        self.assertTrue(curve.closed)
        self.assertAlmostEqual(curve.angle_tol, 1e-3 * 2 * math.pi / 128)
        with self.assertRaises(ValueError):
            curve.points[0] = 0

    def test_rejects_bad_points(self):
        """Test that too few samples and NaN points are rejected."""
        with self.assertRaises(BadInputException):
            BoundaryCurve(0.5, circle(n=32))
        points = circle(n=64)
        points[3] = complex("nan")
        with self.assertRaises(BadInputException):
            BoundaryCurve(0.5, points)

    def test_image_boundary(self):
        """Test the first sample of Example 2 and bad radius or sample counts."""
        f = corpus_entry("Example 2").build_map()
        curve = image_boundary(f, 0.99, 256)
        self.assertAlmostEqual(curve.points[0], 1.4751495, places=12)
        self.assertEqual(curve.samples, 256)
        with self.assertRaises(RadiusOutOfRange):
            image_boundary(f, 1.0, 256)
        with self.assertRaises(BadInputException):
            image_boundary(f, 0.5, 16)

    def test_image_ray_starts_at_origin(self):
        """Test that a ray image starts at f(0) = 0."""
        ray = image_ray(identity_map(), math.pi / 2, 0.5, samples=11)
        self.assertEqual(ray.size, 11)
        self.assertEqual(ray[0], 0)
        self.assertAlmostEqual(ray[-1], 0.5j, places=15)
        with self.assertRaises(BadInputException):
            image_ray(identity_map(), 0.0, 0.5, samples=1)


class TestShapeDiagnostics(unittest.TestCase):
    """Test cases for the starlike and convex diagnostics."""

    def test_circle_is_starlike_and_convex(self):
        """Test that a circle has both margins equal to 2 pi/n."""
        diagnostic = diagnose_shape(image_boundary(identity_map(), 0.5, 256))
        self.assertEqual(diagnostic.verdict_starlike, Verdict.PASS)
        self.assertEqual(diagnostic.verdict_convex, Verdict.PASS)
        self.assertEqual(diagnostic.winding, 1)
        self.assertEqual(diagnostic.turning, 1)
        self.assertAlmostEqual(diagnostic.starlike_margin, 2 * math.pi / 256, places=12)
        self.assertAlmostEqual(diagnostic.convex_margin, 2 * math.pi / 256, places=12)

    def test_curve_missing_the_origin_is_neither(self):
        """Test a convex curve around another point fails both verdicts."""
        diagnostic = diagnose_shape(BoundaryCurve(0.5, circle(center=2.0, radius=0.5)))
        self.assertEqual(diagnostic.winding, 0)
        self.assertEqual(diagnostic.verdict_starlike, Verdict.FAIL)
        self.assertEqual(diagnostic.turning, 1)
        self.assertEqual(diagnostic.verdict_convex, Verdict.FAIL)

    def test_origin_on_curve(self):
        """Test that a curve through 0 raises in strict mode and is INCONCLUSIVE otherwise."""
        curve = BoundaryCurve(0.5, circle(center=0.5, radius=0.5, n=64))
        with self.assertRaises(OriginOnCurve):
            starlike_diagnostic(curve)
        diagnostic = diagnose_shape(curve)
        self.assertTrue(math.isnan(diagnostic.starlike_margin))
        self.assertEqual(diagnostic.verdict_starlike, Verdict.INCONCLUSIVE)
        self.assertEqual(diagnostic.verdict_convex, Verdict.INCONCLUSIVE)
        self.assertEqual(diagnostic.turning, 1)

    def test_degenerate_edge(self):
        """Test that repeated points raise in strict mode and leave starlikeness alone."""
        curve = BoundaryCurve(0.5, np.repeat(circle(n=64), 2))
        with self.assertRaises(DegenerateEdge):
            convex_diagnostic(curve)
        diagnostic = diagnose_shape(curve)
        self.assertEqual(diagnostic.verdict_convex, Verdict.INCONCLUSIVE)
        self.assertTrue(math.isnan(diagnostic.convex_margin))
        self.assertEqual(diagnostic.verdict_starlike, Verdict.PASS)
        self.assertEqual(diagnostic.winding, 1)

    def test_starlike_example_is_not_convex(self):
        """Test that Example 2 is starlike but not convex."""
        curve = image_boundary(corpus_entry("Example 2").build_map(), FIGURE_RADIUS, 4096)
        diagnostic = diagnose_shape(curve)
        self.assertEqual(diagnostic.verdict_starlike, Verdict.PASS)
        self.assertEqual(diagnostic.verdict_convex, Verdict.FAIL)

    def test_convex_example(self):
        """Test that Example 7 is convex with room to spare."""
        curve = image_boundary(corpus_entry("Example 7").build_map(), FIGURE_RADIUS, 4096)
        diagnostic = diagnose_shape(curve)
        self.assertEqual(diagnostic.verdict_convex, Verdict.PASS)
        self.assertEqual(diagnostic.verdict_starlike, Verdict.PASS)
        self.assertGreater(diagnostic.convex_margin, diagnostic.angle_tol)

    def test_verdicts_stable_under_refinement(self):
        """Test that verdicts agree at 2048 and 4096 samples."""
        for entry in BUILTIN_CORPUS:
            f = entry.build_map()
            coarse = diagnose_shape(image_boundary(f, FIGURE_RADIUS, 2048))
            fine = diagnose_shape(image_boundary(f, FIGURE_RADIUS, 4096))
            self.assertEqual(coarse.verdict_starlike, fine.verdict_starlike, entry.anchor)
            self.assertEqual(coarse.verdict_convex, fine.verdict_convex, entry.anchor)

    def test_margins_scale_with_resolution(self):
        """Doubling n leaves margin * n within 10% for every corpus map at r = 0.99."""
        for entry in BUILTIN_CORPUS:
            f = entry.build_map()
            coarse = diagnose_shape(image_boundary(f, 0.99, 2048))
            fine = diagnose_shape(image_boundary(f, 0.99, 4096))
            for name in ("starlike_margin", "convex_margin"):
                before = getattr(coarse, name) * 2048
                after = getattr(fine, name) * 4096
                self.assertLess(abs(after - before), 0.1 * abs(before), f"{entry.anchor} {name}")

    def test_rotational_equivariance(self):
        """f(e^(i a) z) = e^(i a) f(z) for a = 2 pi/(m+1): the curve repeats after n/(m+1) samples."""
        for entry in BUILTIN_CORPUS:
            n = (entry.m + 1) * 512
            shift = n // (entry.m + 1)
            rotation = np.exp(2j * np.pi / (entry.m + 1))
            curve = image_boundary(entry.build_map(), FIGURE_RADIUS, n)
            np.testing.assert_allclose(np.roll(curve.points, -shift), rotation * curve.points,
                                       rtol=0, atol=1e-12, err_msg=entry.anchor)

            original = diagnose_shape(curve)
            rotated = diagnose_shape(BoundaryCurve(curve.radius, rotation * curve.points))
            self.assertEqual(rotated.verdict_starlike, original.verdict_starlike, entry.anchor)
            self.assertEqual(rotated.verdict_convex, original.verdict_convex, entry.anchor)
            self.assertEqual((rotated.winding, rotated.turning), (original.winding, original.turning))
            self.assertAlmostEqual(rotated.starlike_margin, original.starlike_margin, places=12)
            self.assertAlmostEqual(rotated.convex_margin, original.convex_margin, places=12)

    def test_borderline_margin_is_inconclusive(self):
        n = 256
        step = 2 * np.pi / n
        tol = BoundaryCurve(0.5, circle(n=n)).angle_tol
        expected = {-0.5: Verdict.PASS, -5.0: Verdict.INCONCLUSIVE, -50.0: Verdict.FAIL}
        for factor, verdict in expected.items():
            # one backward step, paid back by the next, keeps a full turn
            increments = np.full(n, step)
            increments[10] = factor * tol
            increments[11] = 2 * step - factor * tol
            angles = np.concatenate([[0.0], np.cumsum(increments[:-1])])
            diagnostic = diagnose_shape(BoundaryCurve(0.5, np.exp(1j * angles)))
            self.assertEqual(diagnostic.winding, 1)
            self.assertAlmostEqual(diagnostic.starlike_margin, factor * tol, places=12)
            self.assertEqual(diagnostic.verdict_starlike, verdict, f"factor {factor}")

    def test_convex_implies_starlike(self):
        """Test that no corpus curve is convex without being starlike."""
        for entry in BUILTIN_CORPUS:
            diagnostic = diagnose_shape(image_boundary(entry.build_map(), FIGURE_RADIUS, 4096))
            if diagnostic.verdict_convex == Verdict.PASS:
                self.assertEqual(diagnostic.verdict_starlike, Verdict.PASS, entry.anchor)

    def test_as_dict(self):
        """Test the serialized verdict and sample count."""
        data = diagnose_shape(image_boundary(identity_map(), 0.5, 64)).as_dict()
        self.assertEqual(data["verdict_starlike"], "PASS")
        self.assertEqual(data["samples"], 64)


class TestSensePreservation(unittest.TestCase):
    """Test cases for the Jacobian scan."""

    def setUp(self):
        Settings.reset()
        self.grid = SamplingGrid.with_overrides(angles=256)

    def tearDown(self):
        Settings.reset()

    def test_small_conjugate_part_preserves_sense(self):
        """Test the minimum Jacobian of Example 7 on the grid."""
        f = HarmonicPolynomialMap.monomial_conjugate(5, 1 / 25)
        report = sense_preserving_check(f, self.grid)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertAlmostEqual(report.min_margin, 1 - (0.2 * 0.99 ** 4) ** 2, places=12)

    def test_large_conjugate_part_reverses_sense(self):
        """Test that z + conj(z)^2 reverses sense beyond r = 1/2."""
        f = HarmonicPolynomialMap.monomial_conjugate(2, 1.0)
        report = sense_preserving_check(f, SamplingGrid.with_overrides(r_max=0.6, angles=256))
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertAlmostEqual(report.min_margin, 1 - 1.44, places=12)

    def test_members_preserve_sense(self):
        """Every map that passes membership on the default grid has a positive Jacobian there."""
        grid = SamplingGrid.default()
        maps = [(entry.build_map(), entry.build_params()) for entry in BUILTIN_CORPUS]
        maps += [(item.f, item.params) for item in random_sufficient_maps(20, seed=3)]
        members = 0
        for f, params in maps:
            if check_membership(f, params, grid).verdict is not Verdict.PASS:
                continue
            members += 1
            self.assertEqual(sense_preserving_check(f, grid).verdict, Verdict.PASS)
        self.assertEqual(members, len(maps))


if __name__ == "__main__":
    unittest.main()
