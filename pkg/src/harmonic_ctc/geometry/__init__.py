from harmonic_ctc.geometry.shape import (
    BoundaryCurve,
    ShapeDiagnostic,
    image_boundary,
    image_ray,
    sense_preserving_check,
    starlike_diagnostic,
    convex_diagnostic,
    diagnose_shape,
)
from harmonic_ctc.geometry.svg import render_svg
