"""Monte-Carlo engine: keyed simulation, estimators and goodness-of-fit tests."""

from .estimators import (
    McReport,
    estimate_no_further_record,
    estimate_pmf,
    estimate_poset_transition,
    proportion_report,
)
from .gof import GofReport, gof_chi_square, gof_ks, gof_ks_two_sample, increment_independence
from .simulate import (
    McConfig,
    PosetBatch,
    RecordBatch,
    renyi_sample_records,
    simulate_poset_batch,
    simulate_record_batch,
    simulate_records,
)

__all__ = [
    "McConfig",
    "McReport",
    "GofReport",
    "RecordBatch",
    "PosetBatch",
    "simulate_records",
    "simulate_record_batch",
    "simulate_poset_batch",
    "renyi_sample_records",
    "estimate_pmf",
    "estimate_no_further_record",
    "estimate_poset_transition",
    "proportion_report",
    "gof_chi_square",
    "gof_ks",
    "gof_ks_two_sample",
    "increment_independence",
]
