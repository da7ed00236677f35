"""Exception types raised across the package."""


class RecordLawsError(Exception):
    """Base class for all errors raised by recordlaws."""


class DimensionMismatch(RecordLawsError, ValueError):
    pass


class InvalidElement(RecordLawsError, ValueError):
    """An observation cannot be placed in the ordered space (NaN, wrong shape)."""


class EmptyInput(RecordLawsError, ValueError):
    pass


class TooFewRecords(RecordLawsError, ValueError):
    pass


class InvalidDistribution(RecordLawsError, ValueError):
    pass


class DomainError(RecordLawsError, ValueError):
    """Quantity undefined at this point, e.g. a hazard where F(x) = 1."""


class UnsupportedVariant(RecordLawsError, TypeError):
    """Operation is not defined for this kind of distribution."""


class InvalidGap(RecordLawsError, ValueError):
    pass


class InvalidTimes(RecordLawsError, ValueError):
    pass


class InvalidExponent(RecordLawsError, ValueError):
    pass


class OffSupport(RecordLawsError, ValueError):
    pass


class ShapeMismatch(RecordLawsError, ValueError):
    pass


class StateBoundExceeded(RecordLawsError, ValueError):
    pass


class InsufficientSamples(RecordLawsError, ValueError):
    pass


class DegenerateSample(InsufficientSamples):
    """Sample has zero variance, so a correlation statistic is undefined."""


class TooFewConditioningHits(RecordLawsError, RuntimeError):
    pass
