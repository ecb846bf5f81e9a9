"""Exact and log-space evaluation of the walk laws, with DP oracles."""

from .asymptotics import (
    AsymptoticEntry,
    AsymptoticReport,
    asymptotic_estimate,
    asymptotic_report,
    polya_lower_constant,
    stirling_bracket,
)
from .closed_forms import (
    bernoulli_hitting_pmf,
    bernoulli_return_prob,
    ddim_return_prob,
    friedman_return_prob,
    friedman_white_draw_pmf,
    hitting_pmf,
    log_friedman_return_prob,
    log_polya_hitting_pmf,
    log_polya_return_prob,
    polya_hitting_pmf,
    polya_pmf,
    polya_return_prob,
    return_prob,
)
from .combinatorics import catalan, eulerian, eulerian_direct, eulerian_row, rising_factorial
from .dp import draw_count_pmf_dp, hitting_pmf_dp, hitting_probs_float, return_probs_float
from .series import (
    RecurrenceDiagnostic,
    SeriesError,
    SeriesRow,
    SeriesTable,
    format_value,
    literature_classification,
    recurrence_diagnostic,
    return_prob_asymptotic,
    series_partial_sums,
)
