"""Streaming extraction of record times and record values.

The first observation is always the first record, for every kind. After
that an observation is a record iff it *beats* the current record under
the space's order (see :func:`recordlaws.order.beats`); incomparable
observations are skipped and leave the incumbent unchanged.

    >>> rs = extract_all([3, 1, 4, 1, 5], RecordKind.STRONG_UPPER)
    >>> [(e.time_index, e.value) for e in rs.events]
    [(1, 3), (3, 4), (5, 5)]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from .errors import EmptyInput, TooFewRecords
from .order import Element, OrderedSpace, RecordKind, beats

__all__ = [
    "RecordKind",
    "RecordEvent",
    "RecordSequence",
    "Extractor",
    "feed",
    "extract_all",
    "inter_record_gaps",
]


@dataclass(frozen=True)
class RecordEvent:
    ordinal: int
    time_index: int
    value: Element

    def to_dict(self) -> dict:
        return {"n": self.ordinal, "t": self.time_index, "value": _jsonable(self.value)}


@dataclass(frozen=True)
class RecordSequence:
    kind: RecordKind
    events: tuple[RecordEvent, ...]
    observations_consumed: int
    space: OrderedSpace = field(default_factory=OrderedSpace)

    @property
    def count(self) -> int:
        return len(self.events)

    @property
    def times(self) -> list[int]:
        return [e.time_index for e in self.events]

    @property
    def values(self) -> list:
        return [e.value for e in self.events]

    @property
    def deltas(self) -> list[int]:
        """Gaps U(n) - U(n-1) for n >= 2 (empty with fewer than two records)."""
        t = self.times
        return [b - a for a, b in zip(t, t[1:])]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "events": [e.to_dict() for e in self.events],
            "deltas": self.deltas,
            "count": self.count,
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(c) for c in v]
    if isinstance(v, (int, float)):
        return v
    return float(v)


class Extractor:
    """Mutable extraction state: feed observations one at a time.

    Parameters
    ----------
    kind : RecordKind
    space : OrderedSpace, optional
        Defaults to the real line.
    """

    def __init__(self, kind: RecordKind | str = RecordKind.STRONG_UPPER, space: OrderedSpace | None = None):
        self.kind = RecordKind.parse(kind)
        self.space = space if space is not None else OrderedSpace()
        self.incumbent: Any = None
        self.next_ordinal = 1
        self.clock = 0
        self._events: list[RecordEvent] = []

    def feed(self, x) -> Optional[RecordEvent]:
        """Consume one observation; return the record it creates, if any."""
        x = self.space.coerce(x)
        self.clock += 1
        if self.incumbent is not None and not beats(self.space, self.kind, x, self.incumbent):
            return None
        event = RecordEvent(self.next_ordinal, self.clock, x)
        self.incumbent = x
        self.next_ordinal += 1
        self._events.append(event)
        return event

    def feed_many(self, xs: Iterable) -> list[RecordEvent]:
        out = []
        for x in xs:
            e = self.feed(x)
            if e is not None:
                out.append(e)
        return out

    def result(self) -> RecordSequence:
        return RecordSequence(self.kind, tuple(self._events), self.clock, self.space)


def feed(state: Extractor, x) -> Optional[RecordEvent]:
    return state.feed(x)


def extract_all(seq: Iterable, kind: RecordKind | str = RecordKind.STRONG_UPPER,
                space: OrderedSpace | None = None) -> RecordSequence:
    """Fold :meth:`Extractor.feed` over ``seq``.

    Raises
    ------
    EmptyInput
        If ``seq`` has no observations.
    InvalidElement, DimensionMismatch
        On NaN or mis-shaped observations.
    """
    ex = Extractor(kind, space)
    ex.feed_many(seq)
    if ex.clock == 0:
        raise EmptyInput("cannot extract records from an empty sequence")
    return ex.result()


def inter_record_gaps(rs: RecordSequence) -> list[int]:
    if rs.count < 2:
        raise TooFewRecords(f"need at least two records for gaps, got {rs.count}")
    return rs.deltas
