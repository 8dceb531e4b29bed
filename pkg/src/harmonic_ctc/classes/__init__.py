from harmonic_ctc.classes.constructs import (
    ClassParams,
    SamplingGrid,
    MarginReport,
    build_phi_k,
    build_Phi_k,
    harmonic_margin,
    harmonic_margin_many,
    analytic_margin,
    analytic_margin_many,
    scan_grid,
    check_membership,
    check_analytic_membership,
    close_to_convex_order,
    slice_map,
    epsilon_mesh,
    check_slices,
    check_phi_order,
)
