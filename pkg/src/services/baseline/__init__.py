"""
Baseline Services
Binned Bonferroni comparison procedure
"""

from src.services.baseline.binned import (
    BIN_RECORD_FIELDS,
    BinnedTest,
    BinState,
    binned_decision,
    binned_step,
    interval_excludes,
    per_bin_burn_in,
    per_bin_level,
    run_binned,
)
from src.services.baseline.binning import Binning, BinningKind, binning_feature

__all__ = [
    "BIN_RECORD_FIELDS",
    "BinnedTest",
    "BinState",
    "binned_decision",
    "binned_step",
    "interval_excludes",
    "per_bin_burn_in",
    "per_bin_level",
    "run_binned",
    "Binning",
    "BinningKind",
    "binning_feature",
]
