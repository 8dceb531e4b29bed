# Numerical verification toolkit for the harmonic class KH0(k, gamma)

__version__ = "0.1.0"

# Series arithmetic
from harmonic_ctc.series import (
    ComplexPolynomial,
    HarmonicPolynomialMap,
    eval_harmonic,
    jacobian,
)

# Class machinery
from harmonic_ctc.classes import (
    ClassParams,
    SamplingGrid,
    MarginReport,
    build_phi_k,
    build_Phi_k,
    harmonic_margin,
    analytic_margin,
    check_membership,
    check_phi_order,
    slice_map,
)

# Theorems
from harmonic_ctc.theorems import (
    necessary_coeff_check,
    sufficient_coeff_check,
    extremal_map,
    convex_combine,
    distortion_envelope,
    herglotz_diagnostic,
)

# Geometry
from harmonic_ctc.geometry import (
    image_boundary,
    sense_preserving_check,
    starlike_diagnostic,
    convex_diagnostic,
    render_svg,
)

# Common utilities
from harmonic_ctc.common.exceptions import HarmonicCtcError, BadInputException
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config import Settings, Verbosity
