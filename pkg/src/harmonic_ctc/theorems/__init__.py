from harmonic_ctc.theorems.coefficients import (
    CoefficientReport,
    coefficient_sum_bound,
    necessary_coeff_check,
    sufficient_coeff_check,
    extremal_map,
    convex_combine,
)
from harmonic_ctc.theorems.distortion import (
    DistortionEnvelope,
    distortion_envelope,
    distortion_closed_form_modulus,
    derivative_closed_form,
    derivative_series,
    modulus_tail_bound,
    terms_for_tail,
    sharp_distortion_map,
    envelope_holds,
)
from harmonic_ctc.theorems.herglotz import (
    HerglotzReport,
    herglotz_coefficients,
    herglotz_diagnostic,
)
