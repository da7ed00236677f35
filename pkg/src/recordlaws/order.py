"""Total and componentwise partial orders on observation values."""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from typing import Any, Union

from .errors import DimensionMismatch, InvalidElement

Element = Union[float, tuple]


class Comparison(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "Comparison":
        if self is Comparison.LESS:
            return Comparison.GREATER
        if self is Comparison.GREATER:
            return Comparison.LESS
        return self


class RecordKind(enum.Enum):
    STRONG_UPPER = "strong-upper"
    WEAK_UPPER = "weak-upper"
    STRONG_LOWER = "strong-lower"
    WEAK_LOWER = "weak-lower"

    @property
    def is_upper(self) -> bool:
        return self in (RecordKind.STRONG_UPPER, RecordKind.WEAK_UPPER)

    @property
    def is_weak(self) -> bool:
        return self in (RecordKind.WEAK_UPPER, RecordKind.WEAK_LOWER)

    def dual(self) -> "RecordKind":
        """Same strength, opposite direction."""
        return {
            RecordKind.STRONG_UPPER: RecordKind.STRONG_LOWER,
            RecordKind.STRONG_LOWER: RecordKind.STRONG_UPPER,
            RecordKind.WEAK_UPPER: RecordKind.WEAK_LOWER,
            RecordKind.WEAK_LOWER: RecordKind.WEAK_UPPER,
        }[self]

    @classmethod
    def parse(cls, text: "str | RecordKind") -> "RecordKind":
        """Accept ``strong-upper``, ``strong_upper``, ``StrongUpper`` and similar."""
        if isinstance(text, RecordKind):
            return text
        key = text.strip().replace("_", "-").lower()
        if "-" not in key:
            for kind in cls:
                if kind.value.replace("-", "") == key:
                    return kind
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown record kind {text!r}") from None


@dataclass(frozen=True)
class OrderedSpace:
    """Either the real line (``dim is None``) or R^dim with the componentwise order."""

    dim: int | None = None

    def __post_init__(self):
        if self.dim is not None and (not isinstance(self.dim, int) or self.dim < 1):
            raise ValueError(f"dimension must be a positive integer, got {self.dim!r}")

    @classmethod
    def real(cls) -> "OrderedSpace":
        return cls(None)

    @classmethod
    def vector(cls, dim: int) -> "OrderedSpace":
        return cls(dim)

    @property
    def is_total(self) -> bool:
        return self.dim is None

    def __str__(self) -> str:
        return "R" if self.dim is None else f"R^{self.dim}"

    def coerce(self, x: Any) -> Element:
        """Validate ``x`` and return it in canonical form (scalar or tuple).

        Raises
        ------
        InvalidElement
            NaN coordinates or a value of the wrong shape.
        DimensionMismatch
            Vector of the wrong length.
        """
        if self.dim is None:
            if isinstance(x, (tuple, list)) or not isinstance(x, numbers.Real):
                if hasattr(x, "shape") and getattr(x, "shape") == ():
                    x = x.item()
                else:
                    raise InvalidElement(f"expected a real number, got {x!r}")
            if _is_nan(x):
                raise InvalidElement("NaN observations are not ordered")
            return x
        try:
            coords = tuple(x)
        except TypeError:
            raise InvalidElement(f"expected a vector of length {self.dim}, got {x!r}") from None
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        out = []
        for c in coords:
            if hasattr(c, "item") and getattr(c, "shape", None) == ():
                c = c.item()
            if not isinstance(c, numbers.Real):
                raise InvalidElement(f"non-numeric coordinate {c!r}")
            if _is_nan(c):
                raise InvalidElement("NaN coordinates are not ordered")
            out.append(c)
        return tuple(out)


def _is_nan(v) -> bool:
    return isinstance(v, float) and math.isnan(v)


def compare(space: OrderedSpace, x: Any, y: Any) -> Comparison:
    """Compare two elements; equality is exact, no tolerance."""
    if space.dim is None:
        if x < y:
            return Comparison.LESS
        if x > y:
            return Comparison.GREATER
        if x == y:
            return Comparison.EQUAL
        raise InvalidElement("NaN observations are not ordered")
    if len(x) != space.dim or len(y) != space.dim:
        raise DimensionMismatch(
            f"expected {space.dim} coordinates, got {len(x)} and {len(y)}"
        )
    some_less = some_greater = False
    for a, b in zip(x, y):
        if a < b:
            some_less = True
        elif a > b:
            some_greater = True
        elif a != b:
            raise InvalidElement("NaN coordinates are not ordered")
    if some_less and some_greater:
        return Comparison.INCOMPARABLE
    if some_less:
        return Comparison.LESS
    if some_greater:
        return Comparison.GREATER
    return Comparison.EQUAL


def beats(space: OrderedSpace, kind: RecordKind, candidate: Any, incumbent: Any) -> bool:
    """True when ``candidate`` would be a new record over ``incumbent``."""
    c = compare(space, candidate, incumbent)
    if kind is RecordKind.STRONG_UPPER:
        return c is Comparison.GREATER
    if kind is RecordKind.WEAK_UPPER:
        return c is Comparison.GREATER or c is Comparison.EQUAL
    if kind is RecordKind.STRONG_LOWER:
        return c is Comparison.LESS
    return c is Comparison.LESS or c is Comparison.EQUAL


def negate(x: Element) -> Element:
    if isinstance(x, tuple):
        return tuple(-c for c in x)
    return -x

