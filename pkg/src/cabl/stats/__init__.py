"""Statistical engine: special functions, t-tests, MANOVA, fitting."""

from .fitting import (
    FAMILIES,
    FitFailure,
    FitReport,
    FittedDistribution,
    GofResult,
    chi2_gof,
    fit_distribution,
    rank_families,
)
from .manova import EffectTest, FactorialObservation, manova_two_way
from .ttest import TTestResult, TwoSampleInput, pooled_t_test

__all__ = [
    "FAMILIES",
    "FitFailure",
    "FitReport",
    "FittedDistribution",
    "GofResult",
    "chi2_gof",
    "fit_distribution",
    "rank_families",
    "EffectTest",
    "FactorialObservation",
    "manova_two_way",
    "TTestResult",
    "TwoSampleInput",
    "pooled_t_test",
]
