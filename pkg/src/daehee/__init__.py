"""Exact power-series toolkit for degenerate Bernoulli and Daehee families."""

from .families import (
    Family,
    FamilyId,
    Triangle,
    TriangleKind,
    bernoulli_2nd_value,
    falling_factorial,
    family_value,
    family_values,
    generating_series,
    higher_bernoulli_value,
    triangle,
    triangle_from_series,
)
from .identities import IdentityName, VerificationReport, VerifyConfig, run_all, run_check
from .ring import (
    LAMBDA,
    ONE,
    XVAR,
    YVAR,
    ZERO,
    MultiPoly,
    Rational,
    poly_arith,
    rat_arith,
    scale_lambda,
    substitute_lambda,
    substitute_x_affine,
)
from .series import (
    SeriesError,
    TruncatedSeries,
    compose,
    div_exact,
    egf_coefficient,
    exp,
    int_pow,
    log1p,
    scaled_log,
    series_arith,
    sym_binom_pow,
)

__version__ = "0.1.0"
