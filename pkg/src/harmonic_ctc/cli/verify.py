"""Regression suite behind ``harmonic-ctc verify``.

Each registered check returns one or more :class:`CheckResult` rows. Rows are
emitted in registry order. ``slack`` is the signed distance from failing:
positive when the check passes with room to spare.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from harmonic_ctc.classes.constructs import (
    ClassParams,
    SamplingGrid,
    analytic_margin_many,
    build_phi_k,
    check_membership,
    epsilon_mesh,
    harmonic_margin_many,
    slice_map,
)
from harmonic_ctc.cli.report import CheckResult
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.config.verbosity import Verbosity
from harmonic_ctc.corpus.examples import (
    CONVEX,
    BUILTIN_CORPUS,
    STARLIKE,
    corpus_entry,
    example_one_family,
    example_one_margin,
    random_sufficient_maps,
)
from harmonic_ctc.geometry.shape import diagnose_shape, image_boundary
from harmonic_ctc.series.polynomial import ComplexPolynomial
from harmonic_ctc.theorems.coefficients import (
    convex_combine,
    extremal_map,
    necessary_coeff_check,
    sufficient_coeff_check,
)
from harmonic_ctc.theorems.distortion import distortion_envelope, envelope_holds
from harmonic_ctc.theorems.herglotz import herglotz_diagnostic

logger = logging.getLogger(__name__)

MARGIN_FORMULA_TOL = 1e-9
POINTWISE_FORMULA_TOL = 1e-12
DUALITY_TOL = 1e-4
ENVELOPE_TOL = 1e-8
SHARPNESS_TOL = 1e-15
SUPERPOSITION_TOL = 1e-12
SUPERPOSITION_PAIRS = 50
HERGLOTZ_MESH = 8
EXAMPLE_ONE_INDICES = (2, 3, 4, 5, 7)
TEST_GAMMAS = (0.0, 0.01, 0.5, 0.8)
ENVELOPE_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
ENVELOPE_TERMS = 400


@dataclass
class VerifyContext:
    grid: SamplingGrid
    seed: int
    random_corpus: int = 0
    workers: Optional[int] = None


@dataclass(frozen=True)
class RegisteredCheck:
    name: str
    group: str
    run: Callable[[VerifyContext], List[CheckResult]]


def _slack(tol: float, measured: float) -> float:
    return float(tol - measured) + 0.0


def _status(ok: bool) -> str:
    return Verdict.PASS.value if ok else Verdict.FAIL.value


def probe_points() -> np.ndarray:
    """32 fixed points: 4 radii x 8 angles, offset off the real axis."""
    radii = np.array([0.3, 0.6, 0.9, 0.99])
    theta = 2.0 * np.pi * (np.arange(8) + 0.25) / 8
    return (radii[:, None] * np.exp(1j * theta)[None, :]).reshape(-1)


def check_corpus_membership(ctx: VerifyContext) -> List[CheckResult]:
    rows = []
    for entry in BUILTIN_CORPUS:
        report = check_membership(entry.build_map(), entry.build_params(), ctx.grid,
                                  ctx.workers, Verbosity.SILENT)
        expected = entry.expected_margin(ctx.grid.r_max)
        deviation = abs(report.min_margin - expected)
        ok = report.verdict is Verdict.PASS and deviation <= MARGIN_FORMULA_TOL
        rows.append(CheckResult(
            f"membership/{entry.anchor}", _status(ok), anchor=entry.anchor,
            slack=report.min_margin,
            detail={"expected_margin": expected, "deviation": deviation,
                    "gamma": float(entry.gamma), "notes": entry.notes},
        ))
    return rows


def check_example_one_formula(ctx: VerifyContext) -> List[CheckResult]:
    zs = probe_points()
    radii = np.abs(zs)
    worst = 0.0
    for m in EXAMPLE_ONE_INDICES:
        for gamma in TEST_GAMMAS:
            params = ClassParams(2, gamma)
            margins = harmonic_margin_many(example_one_family(m, gamma), params, zs)
            expected = np.array([example_one_margin(m, gamma, r) for r in radii])
            worst = max(worst, float(np.max(np.abs(margins - expected))))
    return [CheckResult("example-one-formula", _status(worst <= POINTWISE_FORMULA_TOL),
                        anchor="Example 1", slack=_slack(POINTWISE_FORMULA_TOL, worst),
                        detail={"max_deviation": worst})]


def check_phi_k_identity(ctx: VerifyContext) -> List[CheckResult]:
    degree = get_settings().truncation_degree
    worst = 0.0
    for k in range(1, 9):
        product = build_phi_k(ClassParams(k, 0.0), degree)
        target = ComplexPolynomial.monomial(k, 1, degree)
        worst = max(worst, float(np.max(np.abs(product.coeffs - target.coeffs))))
    return [CheckResult("phi-k-identity", _status(worst == 0.0), anchor="phi = z",
                        slack=_slack(0.0, worst), detail={"max_error": worst})]


def check_slice_duality(ctx: VerifyContext) -> List[CheckResult]:
    zs = probe_points()
    mesh = epsilon_mesh()
    worst = 0.0
    for entry in BUILTIN_CORPUS:
        f, params = entry.build_map(), entry.build_params()
        direct = harmonic_margin_many(f, params, zs)
        sliced = np.min(np.stack([analytic_margin_many(slice_map(f, eps), params, zs) for eps in mesh]), axis=0)
        worst = max(worst, float(np.max(np.abs(sliced - direct))))
    return [CheckResult("slice-duality", _status(worst <= DUALITY_TOL), anchor="slice criterion",
                        slack=_slack(DUALITY_TOL, worst),
                        detail={"max_deviation": worst, "mesh": int(mesh.size)})]


def check_envelope_identity(ctx: VerifyContext) -> List[CheckResult]:
    worst = 0.0
    for gamma in TEST_GAMMAS:
        for r in ENVELOPE_RADII:
            env = distortion_envelope(gamma, r, ENVELOPE_TERMS)
            worst = max(worst,
                        abs(env.upper_derivative - env.upper_derivative_series),
                        abs(env.lower_derivative - env.lower_derivative_series))
    return [CheckResult("envelope-identity", _status(worst <= ENVELOPE_TOL), anchor="distortion bounds",
                        slack=_slack(ENVELOPE_TOL, worst),
                        detail={"max_deviation": worst, "terms": ENVELOPE_TERMS})]


def check_envelope_ordering(ctx: VerifyContext) -> List[CheckResult]:
    rows = []
    for entry in BUILTIN_CORPUS:
        holds, worst = envelope_holds(entry.build_map(), float(entry.gamma), ENVELOPE_RADII)
        rows.append(CheckResult(f"envelope-ordering/{entry.anchor}", _status(holds),
                                anchor=entry.anchor, slack=worst))
    return rows


def check_extremal_sharpness(ctx: VerifyContext) -> List[CheckResult]:
    worst = 0.0
    for m in (2, 3, 5):
        for gamma in TEST_GAMMAS:
            report = necessary_coeff_check(extremal_map(m, gamma), gamma)
            row = next(r for r in report.per_index if r[0] == m)
            worst = max(worst, abs(row[3]))
    return [CheckResult("extremal-sharpness", _status(worst <= SHARPNESS_TOL), anchor="coefficient bound",
                        slack=_slack(SHARPNESS_TOL, worst), detail={"max_abs_slack": worst})]


def check_convex_superposition(ctx: VerifyContext) -> List[CheckResult]:
    rng = np.random.default_rng(ctx.seed)
    zs = np.concatenate([[0j], probe_points()])
    worst = np.inf
    for _ in range(SUPERPOSITION_PAIRS):
        a, b = rng.choice(len(BUILTIN_CORPUS), size=2, replace=True)
        first, second = BUILTIN_CORPUS[a], BUILTIN_CORPUS[b]
        s = float(rng.uniform())
        params = ClassParams(2, float(min(first.gamma, second.gamma)))
        f, g = first.build_map(), second.build_map()
        combined = convex_combine([f, g], [s, 1.0 - s])
        lhs = harmonic_margin_many(combined, params, zs)
        rhs = s * harmonic_margin_many(f, params, zs) + (1.0 - s) * harmonic_margin_many(g, params, zs)
        worst = min(worst, float(np.min(lhs - rhs)))
    return [CheckResult("convex-superposition", _status(worst >= -SUPERPOSITION_TOL),
                        anchor="convex combinations", slack=worst,
                        detail={"pairs": SUPERPOSITION_PAIRS, "seed": ctx.seed})]


def check_herglotz_positivity(ctx: VerifyContext) -> List[CheckResult]:
    rows = []
    for entry in BUILTIN_CORPUS:
        f, params = entry.build_map(), entry.build_params()
        worst_margin, worst_coefficient, ok = np.inf, 0.0, True
        for eps in epsilon_mesh(HERGLOTZ_MESH):
            report = herglotz_diagnostic(slice_map(f, eps), params, ctx.grid,
                                         workers=ctx.workers, verbosity=Verbosity.SILENT)
            ok = ok and report.verdict is Verdict.PASS and report.coefficient_bound_holds
            worst_margin = min(worst_margin, report.min_margin)
            worst_coefficient = max(worst_coefficient, report.max_coefficient)
        rows.append(CheckResult(f"herglotz-positivity/{entry.anchor}", _status(ok), anchor=entry.anchor,
                                slack=worst_margin, detail={"max_coefficient": worst_coefficient}))
    return rows


def check_sufficient_soundness(ctx: VerifyContext) -> List[CheckResult]:
    chains = [("corpus", [(entry.build_map(), entry.build_params()) for entry in BUILTIN_CORPUS])]
    if ctx.random_corpus:
        generated = random_sufficient_maps(ctx.random_corpus, ctx.seed)
        chains.append(("random", [(item.f, item.params) for item in generated]))
    rows = []
    for label, maps in chains:
        tested, counterexamples, worst = 0, 0, np.inf
        for f, params in maps:
            if sufficient_coeff_check(f, params).verdict is not Verdict.PASS:
                continue
            tested += 1
            report = check_membership(f, params, ctx.grid, ctx.workers, Verbosity.SILENT)
            worst = min(worst, report.min_margin)
            if report.verdict is not Verdict.PASS:
                counterexamples += 1
        rows.append(CheckResult(f"sufficient-soundness/{label}", _status(counterexamples == 0),
                                anchor="sufficient condition", slack=worst if tested else None,
                                detail={"maps": len(maps), "tested": tested,
                                        "counterexamples": counterexamples}))
    return rows


def _figure_boundary(entry):
    settings = get_settings()
    return image_boundary(entry.build_map(), settings.figure_radius, settings.boundary_samples)


def check_figure_shapes(ctx: VerifyContext) -> List[CheckResult]:
    rows = []
    for entry in BUILTIN_CORPUS:
        diagnostic = diagnose_shape(_figure_boundary(entry))
        if entry.shape == STARLIKE:
            verdict, margin = diagnostic.verdict_starlike, diagnostic.starlike_margin
        else:
            verdict, margin = diagnostic.verdict_convex, diagnostic.convex_margin
        rows.append(CheckResult(f"figure-shape/{entry.anchor}", verdict.value, anchor=entry.anchor,
                                slack=margin, detail={"claim": entry.shape, "winding": diagnostic.winding}))
    # the first starlike example is visibly not convex
    entry = corpus_entry("Example 2")
    diagnostic = diagnose_shape(_figure_boundary(entry))
    rows.append(CheckResult(f"figure-shape/{entry.anchor}/not-{CONVEX}",
                            _status(diagnostic.verdict_convex is Verdict.FAIL), anchor=entry.anchor,
                            slack=-diagnostic.convex_margin))
    return rows


REGISTRY = (
    RegisteredCheck("membership", "membership", check_corpus_membership),
    RegisteredCheck("example-one-formula", "membership", check_example_one_formula),
    RegisteredCheck("phi-k-identity", "phi-k", check_phi_k_identity),
    RegisteredCheck("slice-duality", "slices", check_slice_duality),
    RegisteredCheck("envelope-identity", "distortion", check_envelope_identity),
    RegisteredCheck("envelope-ordering", "envelope", check_envelope_ordering),
    RegisteredCheck("extremal-sharpness", "coefficients", check_extremal_sharpness),
    RegisteredCheck("convex-superposition", "convex-combination", check_convex_superposition),
    RegisteredCheck("herglotz-positivity", "herglotz", check_herglotz_positivity),
    RegisteredCheck("sufficient-soundness", "sufficient", check_sufficient_soundness),
    RegisteredCheck("figure-shapes", "shapes", check_figure_shapes),
)


def select_checks(name_filter: Optional[str] = None) -> List[RegisteredCheck]:
    """Checks whose group or name equals ``name_filter``; all of them when it is empty."""
    if not name_filter:
        return list(REGISTRY)
    return [check for check in REGISTRY if name_filter in (check.group, check.name)]


def run_checks(ctx: VerifyContext, name_filter: Optional[str] = None) -> List[CheckResult]:
    rows: List[CheckResult] = []
    for check in select_checks(name_filter):
        logger.info(f"verify: running {check.name}")
        rows.extend(check.run(ctx))
    return rows
