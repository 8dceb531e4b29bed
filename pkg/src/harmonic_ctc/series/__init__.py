from harmonic_ctc.series.polynomial import (
    ComplexPolynomial,
    HarmonicPolynomialMap,
    evaluate,
    evaluate_many,
    derivative,
    multiply,
    rotate,
    divide_by_power,
    series_divide,
    eval_harmonic,
    eval_harmonic_many,
    jacobian,
    jacobian_many,
)
