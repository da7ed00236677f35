"""Closed-form probability laws of strong upper records for iid sequences.

Distribution-free quantities (record-time and inter-record laws) take no
distribution argument and are computed in exact rational arithmetic; the
``exact`` attribute of the returned :class:`LawValue` keeps the
``Fraction``. Laws of record values take a :class:`~recordlaws.dist.Distribution`.
Discrete laws stay exact when the distribution's parameters are fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Any, Callable, Sequence

import numpy as np

from .dist import Distribution
from .errors import (
    DomainError,
    InvalidExponent,
    InvalidGap,
    InvalidTimes,
    OffSupport,
    ShapeMismatch,
    UnsupportedVariant,
)

__all__ = [
    "LawValue",
    "IndexTuple",
    "interrecord_joint_pmf",
    "record_times_joint_pmf",
    "record_time_transition_pmf",
    "record_value_marginal_pdf",
    "record_value_joint_pdf",
    "record_value_subvector_pdf",
    "discrete_record_pmf",
    "discrete_record_joint_pmf",
    "joint_max_cdf",
    "record_joint_cdf_truncated",
    "prob_no_further_record",
    "gamma_integral",
    "hazard_simplex_integral",
    "elementary_symmetric",
    "FORMULAS",
]

MAX_SYMMETRIC_DEGREE = 64


@dataclass(frozen=True)
class LawValue:
    """A probability, mass or density returned by a closed-form law."""

    value: float
    formula_id: str
    support_flag: bool = True
    exact: Any = None

    def __post_init__(self):
        if not self.support_flag and self.value != 0:
            raise ValueError("values outside the support must be zero")

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return {"formula": self.formula_id, "value": self.value, "support": self.support_flag}


def _law(value, formula_id: str, support: bool = True) -> LawValue:
    exact = value if isinstance(value, (Fraction, int)) else None
    return LawValue(float(value), formula_id, support, exact)


def _outside(formula_id: str) -> LawValue:
    return LawValue(0.0, formula_id, False, Fraction(0))


@dataclass(frozen=True)
class IndexTuple:
    """Strictly increasing record ordinals n_1 < ... < n_k with n_1 >= 1."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ShapeMismatch("index tuple must be nonempty")
        if idx[0] < 1 or any(b <= a for a, b in zip(idx, idx[1:])):
            raise ShapeMismatch(f"indices must be strictly increasing and >= 1, got {idx}")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def _check_positive_ints(values: Sequence[int], exc: type, what: str) -> list[int]:
    out = []
    for v in values:
        if int(v) != v or v < 1:
            raise exc(f"{what} must be integers >= 1, got {list(values)}")
        out.append(int(v))
    return out


# -- distribution-free laws --------------------------------------------------


def interrecord_joint_pmf(ks: Sequence[int]) -> LawValue:
    """P(Delta_2 = k_2, ..., Delta_n = k_n) for a continuous iid sequence.

    Equal to ``1 / ((s_n + 1) * s_2 * ... * s_n)`` with ``s_j = k_2 + ... + k_j``.

    >>> interrecord_joint_pmf([2, 3]).exact
    Fraction(1, 60)
    """
    ks = _check_positive_ints(ks, InvalidGap, "gaps")
    partial = list(accumulate(ks))
    denom = (partial[-1] + 1 if partial else 1) * math.prod(partial)
    return _law(Fraction(1, denom), "interRecords")


def record_times_joint_pmf(ell: Sequence[int]) -> LawValue:
    """P(U(2) = l_2, ..., U(n) = l_n) = 1 / (l_n * prod (l_j - 1))."""
    ell = [int(v) for v in ell]
    if not ell:
        raise InvalidTimes("need at least one record time")
    if ell[0] < 2 or any(b <= a for a, b in zip(ell, ell[1:])):
        raise InvalidTimes(f"record times must satisfy 2 <= l_2 < ... < l_n, got {ell}")
    return _law(Fraction(1, ell[-1] * math.prod(v - 1 for v in ell)), "lawRtimes")


def record_time_transition_pmf(k: int, j: int) -> LawValue:
    """P(U(n+1) = j | U(n) = k) = k / (j (j - 1)), zero unless j > k."""
    if k < 1:
        raise InvalidTimes(f"record time must be >= 1, got {k}")
    if j <= k:
        return _outside("lrecMarkov")
    return _law(Fraction(k, j * (j - 1)), "lrecMarkov")


def gamma_integral(ks: Sequence[int]) -> Fraction:
    """Integral of prod F(x_j)^(k_j - 1) dF(x_j) over x_1 < ... < x_n.

    Does not depend on F: equals ``1 / prod(k_1 + ... + k_j)``.
    """
    ks = _check_positive_ints(ks, InvalidExponent, "exponents")
    if not ks:
        raise InvalidExponent("need at least one exponent")
    return Fraction(1, math.prod(accumulate(ks)))


# -- continuous record values -----------------------------------------------


def _require_continuous(d: Distribution) -> None:
    if d.is_discrete:
        raise UnsupportedVariant(f"{type(d).__name__} is discrete; use the discrete laws")


def _safe_hazard(d: Distribution, y):
    try:
        return float(d.hazard(y))
    except DomainError:
        return None


def _safe_cum_hazard(d: Distribution, y):
    try:
        return float(d.cum_hazard(y))
    except DomainError:
        return None


def record_value_marginal_pdf(d: Distribution, n: int, x: float) -> LawValue:
    """Density of the n-th record: R(x)^(n-1) / (n-1)! * f(x)."""
    _require_continuous(d)
    if n < 1:
        raise ValueError("record ordinal must be >= 1")
    f = float(d.pdf(x))
    if f == 0:
        return _outside("ADR3")
    if n == 1:
        return _law(f, "ADR3")
    R = _safe_cum_hazard(d, x)
    if R is None:
        return _outside("ADR3")
    return _law(R ** (n - 1) / math.factorial(n - 1) * f, "ADR3")


def record_value_joint_pdf(d: Distribution, xs: Sequence[float]) -> LawValue:
    """Joint density of (X^(1), ..., X^(n)): prod_{i<n} r(y_i) * f(y_n) on y_1 < ... < y_n."""
    _require_continuous(d)
    xs = [float(v) for v in xs]
    if not xs:
        raise ShapeMismatch("need at least one value")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        return _outside("ADR1")
    value = float(d.pdf(xs[-1]))
    for y in xs[:-1]:
        r = _safe_hazard(d, y)
        if r is None or float(d.pdf(y)) == 0:
            return _outside("ADR1")
        value *= r
    if value == 0:
        return _outside("ADR1")
    return _law(value, "ADR1")


def record_value_subvector_pdf(d: Distribution, idx: IndexTuple | Sequence[int],
                               xs: Sequence[float]) -> LawValue:
    """Joint density of (X^(n_1), ..., X^(n_k)).

    Each skipped block of ``g - 1`` records between consecutive requested
    ordinals contributes ``(R(y_j) - R(y_{j-1}))^(g-1) / (g-1)!``, with
    R = 0 below the first one.
    """
    _require_continuous(d)
    if not isinstance(idx, IndexTuple):
        idx = IndexTuple(tuple(idx))
    xs = [float(v) for v in xs]
    if len(xs) != len(idx):
        raise ShapeMismatch(f"{len(idx)} ordinals but {len(xs)} values")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        return _outside("ADR2")
    f_last = float(d.pdf(xs[-1]))
    if f_last == 0:
        return _outside("ADR2")
    value = f_last
    prev_R, prev_n = 0.0, 0
    for j, (n_j, y) in enumerate(zip(idx, xs)):
        R = _safe_cum_hazard(d, y)
        if R is None or float(d.pdf(y)) == 0:
            return _outside("ADR2")
        gap = n_j - prev_n
        value *= (R - prev_R) ** (gap - 1) / math.factorial(gap - 1)
        if j < len(xs) - 1:
            value *= _safe_hazard(d, y)
        prev_R, prev_n = R, n_j
    return _law(value, "ADR2")


def hazard_simplex_integral(d: Distribution, n: int, z: float | None, y: float) -> float:
    """(R(y) - R(z))^(n-1) / (n-1)!, the integral of prod r(x_i) over z < x_1 < ... < x_{n-1} < y.

    ``z=None`` means the lower endpoint of the law (where R = 0).
    """
    _require_continuous(d)
    if n < 1:
        raise ValueError("n must be >= 1")
    if z is not None and z > y:
        raise DomainError(f"need z <= y, got z={z}, y={y}")
    if n == 1:
        return 1.0
    Ry = float(d.cum_hazard(y))
    Rz = 0.0 if z is None else float(d.cum_hazard(z))
    return (Ry - Rz) ** (n - 1) / math.factorial(n - 1)


# -- discrete record values --------------------------------------------------


def elementary_symmetric(values: Sequence, degree: int):
    """e_degree(values) by the one-pass recurrence, exact for exact inputs.

    >>> elementary_symmetric([1, 2, 3], 2)
    11
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree > MAX_SYMMETRIC_DEGREE:
        raise ValueError(f"degree {degree} exceeds the cap of {MAX_SYMMETRIC_DEGREE}")
    if degree > len(values):
        return 0
    e = [1] + [0] * degree
    for i, v in enumerate(values):
        for m in range(min(i + 1, degree), 0, -1):
            e[m] = e[m] + v * e[m - 1]
    return e[degree]


def _require_discrete(d: Distribution) -> None:
    if not d.is_discrete:
        raise UnsupportedVariant(f"{type(d).__name__} is continuous; use the density laws")


def discrete_record_pmf(d: Distribution, n: int, y) -> LawValue:
    """P(X^(n) = y): the degree n-1 elementary symmetric sum of the hazards
    of the support points below ``y``, times f(y)."""
    _require_discrete(d)
    if n < 1:
        raise ValueError("record ordinal must be >= 1")
    f = d.pdf(y)
    if f == 0:
        raise OffSupport(f"{y!r} is not an atom of {d!r}")
    hazards = [d.hazard(t) for t in d.support_below(y)]
    return _law(elementary_symmetric(hazards, n - 1) * f, "DDR3")


def discrete_record_joint_pmf(d: Distribution, ys: Sequence) -> LawValue:
    """P(X^(1) = y_1, ..., X^(n) = y_n) = prod_{i<n} r(y_i) * f(y_n).

    Zero (flagged) when the y's are not strictly increasing atoms.
    """
    _require_discrete(d)
    ys = list(ys)
    if not ys:
        raise ShapeMismatch("need at least one value")
    if any(b <= a for a, b in zip(ys, ys[1:])) or any(d.pdf(y) == 0 for y in ys):
        return _outside("DDR2")
    value = d.pdf(ys[-1])
    for y in ys[:-1]:
        value = value * d.hazard(y)
    return _law(value, "DDR2")


def prob_no_further_record(d: Distribution) -> LawValue:
    """P(U(n+1) = infinity) = P(X = uep(F)), the mass of an atom at the upper endpoint."""
    mass = d.endpoints().uep_atom_mass
    return _law(mass, "nrec03", True)


# -- maxima ------------------------------------------------------------------


def _running_minima(ys: Sequence[float]) -> list[float]:
    out = list(ys)
    for i in range(len(out) - 2, -1, -1):
        out[i] = min(out[i], out[i + 1])
    return out


def joint_max_cdf(d: Distribution, ys: Sequence[float]) -> LawValue:
    """P(M_1 <= y_1, ..., M_n <= y_n) = prod F(min(y_i, ..., y_n)) for partial maxima M."""
    if not len(ys):
        raise ShapeMismatch("need at least one threshold")
    value = 1
    for y in _running_minima(ys):
        value = value * d.cdf(y)
    return _law(value, "PEX1")


def record_joint_cdf_truncated(d: Distribution, ys: Sequence[float], horizon: int) -> tuple[LawValue, float]:
    """Sum over record-time tuples 1 = l_1 < ... < l_n <= horizon of
    ``prod F(y*_j)^(l_j - l_{j-1}) * P(U = l)`` with running minima y*.

    Returns the partial sum and the record-time mass not enumerated.

    Notes
    -----
    Weighting each tuple by the unconditional law of the maxima treats
    record times and maxima as independent. That holds when every running
    minimum equals ``y_n`` (e.g. ``ys`` nonincreasing), where the sum is the
    record-value cdf; for other thresholds it is not.
    """
    n = len(ys)
    if n < 1:
        raise ShapeMismatch("need at least one threshold")
    if horizon < n:
        raise ValueError(f"horizon {horizon} is shorter than the number of records {n}")
    a = [float(d.cdf(y)) for y in _running_minima(ys)]
    value, mass = _record_time_chain(a, horizon)
    return _law(value, "GRDMR"), max(0.0, 1.0 - mass)


def _record_time_chain(a: list[float], horizon: int) -> tuple[float, float]:
    # cur[l] accumulates, over tuples ending at l_j = l, the product of
    # a_i^(l_i - l_{i-1}) / (l_i - 1); weights are the same with all a_i = 1.
    times = np.arange(horizon + 1, dtype=float)
    inv = np.zeros(horizon + 1)
    inv[2:] = 1.0 / (times[2:] - 1.0)
    cur = np.zeros(horizon + 1)
    cur[1] = a[0]
    wcur = np.zeros(horizon + 1)
    wcur[1] = 1.0
    for aj in a[1:]:
        cur = _shift_geometric(cur, aj) * inv
        wcur = _shift_geometric(wcur, 1.0) * inv
    ends = np.zeros(horizon + 1)
    ends[1:] = 1.0 / times[1:]
    return float(np.sum(cur * ends)), float(np.sum(wcur * ends))


def _shift_geometric(v: np.ndarray, a: float) -> np.ndarray:
    """out[l] = sum_{m < l} v[m] a^(l - m)."""
    out = np.zeros_like(v)
    acc = 0.0
    for l in range(1, len(v)):
        acc = a * (acc + v[l - 1])
        out[l] = acc
    return out


# -- registry used by the command line -----------------------------------------


@dataclass(frozen=True)
class Formula:
    formula_id: str
    func: Callable
    needs_dist: bool
    summary: str


FORMULAS: dict[str, Formula] = {
    f.formula_id: f
    for f in [
        Formula("interRecords", interrecord_joint_pmf, False, "P(Delta_2=k_2,...,Delta_n=k_n); --k"),
        Formula("lawRtimes", record_times_joint_pmf, False, "P(U(2)=l_2,...,U(n)=l_n); --ell"),
        Formula("lrecMarkov", record_time_transition_pmf, False, "P(U(n+1)=j | U(n)=k); --k K --j J"),
        Formula("gamma", gamma_integral, False, "ordered-simplex integral of prod F^(k_j-1) dF; --k"),
        Formula("ADR3", record_value_marginal_pdf, True, "density of X^(n); --n --x"),
        Formula("ADR1", record_value_joint_pdf, True, "joint density of X^(1..n); --y"),
        Formula("ADR2", record_value_subvector_pdf, True, "joint density of X^(n_1..n_k); --idx --y"),
        Formula("DDR3", discrete_record_pmf, True, "P(X^(n)=y), discrete law; --n --x"),
        Formula("DDR2", discrete_record_joint_pmf, True, "P(X^(1..n)=y), discrete law; --y"),
        Formula("PEX1", joint_max_cdf, True, "P(M_1<=y_1,...,M_n<=y_n); --y"),
        Formula("GRDMR", record_joint_cdf_truncated, True, "record-value joint cdf, truncated; --y --horizon"),
        Formula("nrec03", prob_no_further_record, True, "P(no further record) = atom at uep"),
        Formula("gs.21", hazard_simplex_integral, True, "(R(y)-R(z))^(n-1)/(n-1)!; --n --z --x"),
    ]
}
