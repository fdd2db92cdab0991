"""Worst-case budget curves, induction checks, sequence DPs and benchmarks."""

from __future__ import annotations

from .bench import BenchResult, BenchRow, bench_point_budget, fit_exponent
from .dp import binary_worst_case, perfect_binary_curve, perfect_binary_exponent, ternary_worst_case
from .recurrences import (
    LIBRARY,
    InductionReport,
    RecurrenceSpec,
    RegionViolation,
    library_specs,
    load_specs,
    spec_from_dict,
    verify_induction,
)
from .sequences import is_three_good, longest_monotone_straight_through, longest_three_good_subsequence

__all__ = [
    "BenchResult", "BenchRow", "bench_point_budget", "fit_exponent",
    "binary_worst_case", "perfect_binary_curve", "perfect_binary_exponent", "ternary_worst_case",
    "LIBRARY", "InductionReport", "RecurrenceSpec", "RegionViolation", "library_specs", "load_specs",
    "spec_from_dict", "verify_induction",
    "is_three_good", "longest_monotone_straight_through", "longest_three_good_subsequence",
]
