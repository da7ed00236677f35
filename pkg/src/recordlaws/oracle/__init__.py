"""Independent ground truth: exact enumeration and ordered-simplex quadrature."""

from .enumeration import (
    EnumerationConfig,
    EnumerationResult,
    InterRecordPmf,
    NoFurtherRecord,
    RecordExists,
    RecordTimePmf,
    RecordValuePmf,
    exact_record_query,
)
from .quadrature import (
    ADR1Kernel,
    GammaKernel,
    HazardProduct,
    QuadratureConfig,
    QuadratureResult,
    nested_integral,
    simplex_quadrature,
)

__all__ = [
    "EnumerationConfig",
    "EnumerationResult",
    "InterRecordPmf",
    "NoFurtherRecord",
    "RecordExists",
    "RecordTimePmf",
    "RecordValuePmf",
    "exact_record_query",
    "ADR1Kernel",
    "GammaKernel",
    "HazardProduct",
    "QuadratureConfig",
    "QuadratureResult",
    "nested_integral",
    "simplex_quadrature",
]
