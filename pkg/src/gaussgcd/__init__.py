"""Exact gcd statistics for random Gaussian integers.

The library computes, for every cutoff x, the exact distribution of the
gcd norm over ordered pairs of ideals of Z[i] with norm <= x, and compares
the derived probabilities, expectations and higher moments against their
analytic main terms and conjectured growth constants.
"""

from .analytic import (
    ZetaConstants,
    conjectured_moment_constant,
    dedekind_zeta_qi,
    dedekind_zeta_qi_lattice,
    dirichlet_beta,
    expected_norm_main,
    expected_norm_slope,
    gcd_probability_main,
    riemann_zeta,
    sierpinski_constant,
)
from .gaussian import (
    CanonicalIdeal,
    GaussianFactorization,
    GaussianInt,
    canonical_associate,
    div_rem_rounded,
    euclid_gcd,
    factor_gaussian,
    ideal_moebius,
    ideals_up_to,
    norm,
)
from .gcdstats import (
    FitResult,
    GcdDistribution,
    MomentSeries,
    coprime_probability,
    distribution_bruteforce,
    distribution_fast,
    expected_norm,
    fit_log_linear,
    fit_polynomial,
    leading_coefficient_experiment,
    moment,
    moment_series,
    moment_series_multi,
    sample_grid,
)
from .sieve import SieveTables, build_tables, load_cache

__version__ = "0.1.0"

__all__ = [
    "CanonicalIdeal",
    "FitResult",
    "GaussianFactorization",
    "GaussianInt",
    "GcdDistribution",
    "MomentSeries",
    "SieveTables",
    "ZetaConstants",
    "build_tables",
    "canonical_associate",
    "conjectured_moment_constant",
    "coprime_probability",
    "dedekind_zeta_qi",
    "dedekind_zeta_qi_lattice",
    "dirichlet_beta",
    "distribution_bruteforce",
    "distribution_fast",
    "div_rem_rounded",
    "euclid_gcd",
    "expected_norm",
    "expected_norm_main",
    "expected_norm_slope",
    "factor_gaussian",
    "fit_log_linear",
    "fit_polynomial",
    "gcd_probability_main",
    "ideal_moebius",
    "ideals_up_to",
    "leading_coefficient_experiment",
    "load_cache",
    "moment",
    "moment_series",
    "moment_series_multi",
    "norm",
    "riemann_zeta",
    "sample_grid",
    "sierpinski_constant",
]
