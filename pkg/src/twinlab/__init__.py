"""Numerical laboratory for twin prime counts.

Census of twin pairs by residue class, the density integral behind
their predicted count (series identity, quadrature, Monte Carlo and
deterministic sequence estimates), class balance statistics, and
partial sums of the convergent twin reciprocal series.
"""

from .analytic import (DivergentExpansionError, IntegralEstimate, li,
                       li_quadrature, hl_integral, hl_prediction,
                       poincare_expansion, ratio_bounds_check,
                       twin_prime_constant)
from .brun import (BoundViolation, BrunSum, brun_partial_sum, brun_series,
                   comparison_bound_check, dominating_series_partial)
from .lds import (LdsSequence, load_sequence_file, prime_gap_sequence,
                  qmc_integral, sequence_from_spec, star_discrepancy,
                  van_der_corput, van_der_corput_sequence)
from .montecarlo import (ConvergenceStudy, McConfig, convergence_study,
                         mc_integral)
from .report import ComparisonRow, run_report
from .sieve import (CensusRow, CensusTable, TwinPair, census, class_label,
                    decade_checkpoints, enumerate_twin_pairs, sieve_primes)
from .stats import (ChiSquareResult, ProportionRow, chi_square_uniform,
                    proportion_series)

__version__ = "0.1.0"

__all__ = [
    "BoundViolation", "BrunSum", "CensusRow", "CensusTable",
    "ChiSquareResult", "ComparisonRow", "ConvergenceStudy",
    "DivergentExpansionError", "IntegralEstimate", "LdsSequence", "McConfig",
    "ProportionRow", "TwinPair", "brun_partial_sum", "brun_series", "census",
    "chi_square_uniform", "class_label", "comparison_bound_check",
    "convergence_study", "decade_checkpoints", "dominating_series_partial",
    "enumerate_twin_pairs", "hl_integral", "hl_prediction", "li",
    "li_quadrature", "load_sequence_file", "mc_integral",
    "poincare_expansion", "prime_gap_sequence", "proportion_series",
    "qmc_integral", "ratio_bounds_check", "run_report", "sequence_from_spec",
    "sieve_primes", "star_discrepancy", "twin_prime_constant",
    "van_der_corput", "van_der_corput_sequence",
]
