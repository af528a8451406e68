"""Additive complements of r-th powers: construction, representation counts,
and a finite-N audit of the bucket/collision lower-bound argument."""

from .complements import (
    ComplementSet,
    counting_function,
    counting_ratio_profile,
    coverage_report,
    greedy_complement,
    load_complement,
    save_complement,
    schedule_complement,
)
from .powers import PowerSet, bucket_counts_powers, build_powers, g_asymptotic_check, power_count
from .repcount import RepProfile, crosscheck_identity, excess, representation_counts

__version__ = "0.1.0"
