import os
import unittest
from unittest import mock
from fractions import Fraction

import numpy as np

from harmonic_ctc.classes.constructs import ClassParams, SamplingGrid, check_membership, check_phi_order
from harmonic_ctc.cli.verify import (
    REGISTRY,
    VerifyContext,
    check_convex_superposition,
    check_corpus_membership,
    check_envelope_identity,
    check_envelope_ordering,
    check_example_one_formula,
    check_extremal_sharpness,
    check_figure_shapes,
    check_herglotz_positivity,
    check_phi_k_identity,
    check_slice_duality,
    check_sufficient_soundness,
    probe_points,
    run_checks,
    select_checks,
)
from harmonic_ctc.common.exceptions import BadInputException, InvalidIndex
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import Settings
from harmonic_ctc.corpus.examples import (
    CONVEX,
    BUILTIN_CORPUS,
    STARLIKE,
    corpus_entry,
    example_one_family,
    example_one_margin,
    random_sufficient_maps,
)
from harmonic_ctc.geometry.shape import image_boundary
from harmonic_ctc.theorems.coefficients import sufficient_coeff_check

SLOW = bool(os.environ.get("HARMONIC_CTC_SLOW"))


def small_context(seed=2024, random_corpus=0):
    return VerifyContext(grid=SamplingGrid.with_overrides(angles=256), seed=seed, random_corpus=random_corpus)


class TestCorpusEntries(unittest.TestCase):
    """Test cases for the built-in Examples 2 to 7."""

    def test_six_examples_in_order(self):
        """Test anchors and claimed shapes in order."""
        self.assertEqual([e.anchor for e in BUILTIN_CORPUS], [f"Example {i}" for i in range(2, 8)])
        self.assertEqual([e.shape for e in BUILTIN_CORPUS], [STARLIKE, CONVEX] * 3)

    def test_coefficients_are_scaled_for_gamma(self):
        """Test that every coefficient is exactly (1 - gamma)/m."""
        for entry in BUILTIN_CORPUS:
            self.assertEqual(entry.coefficient, (1 - entry.gamma) / entry.m, entry.anchor)

    def test_discrepancy_notes(self):
        """Test that examples whose caption order differs from gamma carry a note."""
        noted = [e.anchor for e in BUILTIN_CORPUS if e.notes]
        self.assertEqual(noted, ["Example 2", "Example 4", "Example 6"])
        self.assertEqual(corpus_entry("Example 4").caption_order, Fraction(33, 100))
        self.assertEqual(corpus_entry("Example 4").gamma, Fraction(1, 100))

    def test_lookup(self):
        """Test lookup by anchor, exact serialization and an unknown anchor."""
        entry = corpus_entry("Example 3")
        self.assertEqual(entry.m, 2)
        self.assertEqual(entry.as_dict()["coefficient"], "1/10")
        self.assertEqual(entry.build_params().k, 2)
        self.assertAlmostEqual(entry.build_map().v[2], 0.1)
        with self.assertRaises(KeyError):
            corpus_entry("Example 9")

    def test_expected_margin(self):
        """Test the closed-form margin of Example 2."""
        entry = corpus_entry("Example 2")
        self.assertAlmostEqual(entry.expected_margin(0.99), 0.99 * 0.01, places=15)


class TestExampleOneFamily(unittest.TestCase):
    """Test cases for the z + ((1 - gamma)/m) conj(z)^m family."""

    def test_family(self):
        """Test the family coefficient and margin."""
        f = example_one_family(3, 0.4)
        self.assertAlmostEqual(f.v[3], 0.2)
        self.assertEqual(example_one_margin(2, 0.0, 0.5), 0.5)

    def test_bad_parameters(self):
        """Test m < 2, non-integer m and gamma = 1."""
        with self.assertRaises(InvalidIndex):
            example_one_family(1, 0.0)
        with self.assertRaises(InvalidIndex):
            example_one_margin(2.5, 0.0, 0.5)
        with self.assertRaises(BadInputException):
            example_one_family(2, 1.0)

    def test_members_for_every_k(self):
        """Test membership for several k, since the family does not depend on k."""
        grid = SamplingGrid.with_overrides(angles=256)
        for k in (1, 2, 3):
            for m in (2, 5):
                f = example_one_family(m, 0.5)
                report = check_membership(f, ClassParams(k, 0.5), grid)
                self.assertEqual(report.verdict, Verdict.PASS, f"k={k}, m={m}")
                self.assertAlmostEqual(report.min_margin, example_one_margin(m, 0.5, 0.99), delta=1e-9)


class TestRandomSufficientMaps(unittest.TestCase):
    """Test cases for the seeded random generator."""

    def test_seeded_generation_is_reproducible(self):
        """Test that one seed gives the same maps twice."""
        first = random_sufficient_maps(5, seed=7)
        second = random_sufficient_maps(5, seed=7)
        for a, b in zip(first, second):
            self.assertTrue(np.array_equal(a.f.u.coeffs, b.f.u.coeffs))
            self.assertTrue(np.array_equal(a.f.v.coeffs, b.f.v.coeffs))
            self.assertEqual(a.params.k, b.params.k)
        self.assertEqual([m.index for m in first], list(range(5)))

    def test_maps_satisfy_the_sufficient_condition(self):
        """Test that each map uses 90% of the sufficient-condition budget."""
        for item in random_sufficient_maps(20, seed=11):
            report = sufficient_coeff_check(item.f, item.params)
            self.assertEqual(report.verdict, Verdict.PASS)
            lhs, rhs, _ = report.aggregate_sufficient
            self.assertAlmostEqual(lhs, 0.9 * rhs, places=12)

    def test_each_map_has_its_own_starlike_generator(self):
        """Generators are nontrivial, starlike of order (k-1)/k and keep the kernel term within half the budget."""
        grid = SamplingGrid.default()
        kernels = []
        for item in random_sufficient_maps(30, seed=13):
            params = item.params
            self.assertEqual(params.phi.truncation_degree, 2)
            self.assertNotEqual(params.phi[2], 0)
            self.assertLess(abs(params.phi[2]), 1.0 / (params.k + 1))
            report = check_phi_order(params.phi, params.phi_order, grid)
            self.assertEqual(report.verdict, Verdict.PASS, f"map {item.index}")
            kernel = (abs(1 - 2 * params.gamma) + 1) * np.sum(np.abs(params.starlike_kernel.coeffs[2:]))
            self.assertLessEqual(kernel, 0.9 * (1 - params.gamma) + 1e-12)
            kernels.append(kernel)
        self.assertGreater(min(kernels), 0.0)

    def test_bad_arguments(self):
        """Test a negative count and a fill of 1."""
        self.assertEqual(random_sufficient_maps(0), [])
        with self.assertRaises(BadInputException):
            random_sufficient_maps(-1)
        with self.assertRaises(BadInputException):
            random_sufficient_maps(3, fill=1.0)


class TestRegressionChecks(unittest.TestCase):
    """Every built-in check passes on the shipped corpus."""

    def setUp(self):
        Settings.reset()

    def tearDown(self):
        Settings.reset()

    def assertAllPass(self, rows, count=None):
        self.assertTrue(rows)
        if count is not None:
            self.assertEqual(len(rows), count)
        for row in rows:
            self.assertEqual(row.status, "PASS", f"{row.name}: {row.as_dict()}")

    def test_membership(self):
        """Test all six corpus memberships and their margin formula."""
        rows = check_corpus_membership(small_context())
        self.assertAllPass(rows, 6)
        for row in rows:
            self.assertLessEqual(row.detail["deviation"], 1e-9)

    def test_example_one_formula(self):
        """Test the Example 1 margin formula row."""
        self.assertAllPass(check_example_one_formula(small_context()), 1)

    def test_phi_k_identity(self):
        """Test the exact phi_k = z^k identity for phi = z."""
        rows = check_phi_k_identity(small_context())
        self.assertAllPass(rows, 1)
        self.assertEqual(rows[0].detail["max_error"], 0.0)

    def test_slice_duality(self):
        """Test slice duality on the default 256-point mesh."""
        rows = check_slice_duality(small_context())
        self.assertAllPass(rows, 1)
        self.assertEqual(rows[0].detail["mesh"], 256)

    @unittest.skipUnless(SLOW, "set HARMONIC_CTC_SLOW=1 for the fine epsilon mesh")
    def test_slice_duality_fine_mesh(self):
        Settings(epsilon_mesh=4096)
        rows = check_slice_duality(small_context())
        self.assertAllPass(rows, 1)
        self.assertEqual(rows[0].detail["mesh"], 4096)

    def test_envelopes(self):
        """Test the envelope identity and ordering rows."""
        self.assertAllPass(check_envelope_identity(small_context()), 1)
        self.assertAllPass(check_envelope_ordering(small_context()), 6)

    def test_extremal_sharpness(self):
        """Test that the extremal maps meet the bound."""
        self.assertAllPass(check_extremal_sharpness(small_context()), 1)

    def test_convex_superposition(self):
        """Test 50 seeded convex pairs."""
        rows = check_convex_superposition(small_context(seed=5))
        self.assertAllPass(rows, 1)
        self.assertEqual(rows[0].detail["pairs"], 50)

    def test_herglotz_positivity(self):
        """Test Herglotz positivity for the six corpus maps."""
        self.assertAllPass(check_herglotz_positivity(small_context()), 6)

    def test_sufficient_soundness(self):
        """Test soundness on the corpus and ten random maps."""
        rows = check_sufficient_soundness(small_context(random_corpus=10))
        self.assertAllPass(rows, 2)
        self.assertEqual(rows[0].detail["tested"], 6)
        self.assertEqual(rows[1].detail["tested"], 10)
        self.assertEqual(rows[1].detail["counterexamples"], 0)

    def test_sufficient_soundness_on_default_grid(self):
        """A hundred seeded maps, each with a nontrivial generator, all pass membership on the full grid."""
        ctx = VerifyContext(grid=SamplingGrid.default(), seed=7, random_corpus=100)
        rows = check_sufficient_soundness(ctx)
        self.assertAllPass(rows, 2)
        self.assertEqual(rows[1].detail["maps"], 100)
        self.assertEqual(rows[1].detail["tested"], 100)
        self.assertEqual(rows[1].detail["counterexamples"], 0)

    def test_figure_shapes(self):
        """Test the six claimed shapes and that Example 2 is not convex."""
        rows = check_figure_shapes(small_context())
        self.assertAllPass(rows, 7)
        self.assertEqual(rows[-1].name, "figure-shape/Example 2/not-convex")

    def test_figure_shapes_follow_settings(self):
        """Figure curves are sampled at the configured radius and sample count."""
        Settings(figure_radius=0.99, boundary_samples=2048)
        with mock.patch("harmonic_ctc.cli.verify.image_boundary", wraps=image_boundary) as sampled:
            rows = check_figure_shapes(small_context())
        self.assertAllPass(rows, 7)
        self.assertEqual(sampled.call_count, 7)
        for call in sampled.call_args_list:
            self.assertEqual(call.args[1:], (0.99, 2048))


class TestRegistry(unittest.TestCase):
    """Test cases for the check registry."""

    def test_probe_points(self):
        """Test the fixed evaluation points stay off the real axis."""
        zs = probe_points()
        self.assertEqual(zs.shape, (32,))
        self.assertFalse(np.any(np.abs(zs.imag) < 1e-3))

    def test_select_by_group_or_name(self):
        """Test selecting checks by group or by name."""
        self.assertEqual(len(select_checks()), len(REGISTRY))
        self.assertEqual([c.name for c in select_checks("membership")], ["membership", "example-one-formula"])
        self.assertEqual([c.name for c in select_checks("envelope-identity")], ["envelope-identity"])
        self.assertEqual(select_checks("nothing"), [])

    def test_run_checks_follows_registry_order(self):
        """Test running one group."""
        rows = run_checks(small_context(), "coefficients")
        self.assertEqual([r.name for r in rows], ["extremal-sharpness"])


if __name__ == "__main__":
    unittest.main()
