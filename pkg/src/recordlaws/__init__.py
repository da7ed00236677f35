"""Records of iid sequences: extraction, closed-form laws, oracles and simulation."""

from .dist import (
    Exponential,
    FiniteDiscrete,
    Geometric,
    TabulatedContinuous,
    UniformCont,
    parse_distribution,
    uniform_on,
)
from .extract import Extractor, RecordEvent, RecordSequence, extract_all, inter_record_gaps
from .laws import LawValue
from .order import Comparison, OrderedSpace, RecordKind, beats, compare

__all__ = [
    "Comparison",
    "OrderedSpace",
    "RecordKind",
    "compare",
    "beats",
    "Exponential",
    "UniformCont",
    "Geometric",
    "FiniteDiscrete",
    "TabulatedContinuous",
    "uniform_on",
    "parse_distribution",
    "Extractor",
    "RecordEvent",
    "RecordSequence",
    "extract_all",
    "inter_record_gaps",
    "LawValue",
]
