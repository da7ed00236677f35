"""Exact record probabilities for iid discrete sequences by dynamic programming.

The state after ``t`` observations is (index of the current record value,
number of records so far); by independence the next observation moves
mass between states with the atom probabilities, so no sequence is ever
listed explicitly. Each query reports the probability that its event is
decided true within the horizon, plus the mass still undecided there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..dist import Distribution
from ..errors import StateBoundExceeded, UnsupportedVariant

__all__ = [
    "RecordValuePmf",
    "InterRecordPmf",
    "RecordTimePmf",
    "NoFurtherRecord",
    "RecordExists",
    "EnumerationConfig",
    "EnumerationResult",
    "exact_record_query",
]

STATE_BOUND = 10**7
GEOMETRIC_TAIL_CUT = 1e-12


@dataclass(frozen=True)
class RecordValuePmf:
    """Event X^(n) = y."""

    n: int
    y: float


@dataclass(frozen=True)
class InterRecordPmf:
    """Event Delta_2 = k_2, ..., Delta_n = k_n."""

    ks: tuple[int, ...]

    def times(self) -> tuple[int, ...]:
        out, t = [], 1
        for k in self.ks:
            t += k
            out.append(t)
        return tuple(out)


@dataclass(frozen=True)
class RecordTimePmf:
    """Event U(2) = l_2, ..., U(n) = l_n."""

    ells: tuple[int, ...]


@dataclass(frozen=True)
class NoFurtherRecord:
    """Event U(2) = infinity: nothing ever beats the first observation."""


@dataclass(frozen=True)
class RecordExists:
    """Event that an n-th record occurs."""

    n: int


Target = Union[RecordValuePmf, InterRecordPmf, RecordTimePmf, NoFurtherRecord, RecordExists]


@dataclass(frozen=True)
class EnumerationConfig:
    dist: Distribution
    horizon: int
    target: Target
    weak: bool = False


@dataclass(frozen=True)
class EnumerationResult:
    probability: float
    truncation_mass: float

    def __iter__(self):
        return iter((self.probability, self.truncation_mass))


class _Chain:
    """Record-state mass ``P[m, i]``: m records so far, current record at atom i."""

    def __init__(self, dist: Distribution, max_ordinal: int, weak: bool):
        if not dist.is_discrete:
            raise UnsupportedVariant("enumeration needs a discrete law")
        vals, probs, leftover = dist.atoms(GEOMETRIC_TAIL_CUT)
        self.values = np.asarray([float(v) for v in vals])
        self.p = np.asarray([float(q) for q in probs])
        self.leftover = float(leftover)
        self.weak = weak
        # a draw from atom i's own level counts as "not beaten" for strong records
        cdf_incl = np.cumsum(self.p)
        self.stay = cdf_incl - self.p if weak else cdf_incl
        self.P = np.zeros((max_ordinal + 2, len(self.p)))
        self.P[1] = self.p
        self.escaped = self.leftover

    def step(self) -> tuple[np.ndarray, np.ndarray]:
        """Advance one observation; return (stayed, new-record) mass arrays."""
        P = self.P
        below = np.cumsum(P, axis=1)
        if self.weak:
            reach = below  # record value >= incumbent
        else:
            reach = np.zeros_like(P)
            reach[:, 1:] = below[:, :-1]
        stayed = P * self.stay
        moved = np.zeros_like(P)
        moved[1:] = reach[:-1] * self.p
        self.escaped += P.sum() * self.leftover
        return stayed, moved


def _check_bound(chain_size: int, horizon: int, max_ordinal: int) -> None:
    if chain_size * horizon * max_ordinal > STATE_BOUND:
        raise StateBoundExceeded(
            f"support {chain_size} x horizon {horizon} x ordinal {max_ordinal} exceeds {STATE_BOUND}"
        )


def exact_record_query(cfg: EnumerationConfig) -> EnumerationResult:
    """Probability of ``cfg.target`` decided within ``cfg.horizon`` observations.

    The true probability lies in ``[probability, probability + truncation_mass]``.

    Raises
    ------
    StateBoundExceeded
        When support size x horizon x ordinal exceeds 10^7.
    """
    if cfg.horizon < 1:
        raise ValueError("horizon must be >= 1")
    t = cfg.target
    if isinstance(t, RecordValuePmf):
        return _record_value(cfg, t)
    if isinstance(t, InterRecordPmf):
        return _record_times(cfg, t.times())
    if isinstance(t, RecordTimePmf):
        return _record_times(cfg, tuple(t.ells))
    if isinstance(t, NoFurtherRecord):
        return _no_further(cfg)
    if isinstance(t, RecordExists):
        return _exists(cfg, t.n)
    raise TypeError(f"unknown target {t!r}")


def _record_value(cfg: EnumerationConfig, t: RecordValuePmf) -> EnumerationResult:
    chain = _Chain(cfg.dist, t.n, cfg.weak)
    _check_bound(len(chain.p), cfg.horizon, t.n)
    hits = np.nonzero(chain.values == float(t.y))[0]
    if len(hits) == 0:
        return EnumerationResult(0.0, 0.0)
    iy = int(hits[0])
    # ordinal n reached at y: true; a record at or above y otherwise: false
    prob = chain.P[t.n, iy]
    chain.P[:, iy:] = 0
    chain.P[t.n:] = 0
    for _ in range(cfg.horizon - 1):
        stayed, moved = chain.step()
        prob += moved[t.n, iy]
        chain.P = stayed + moved
        chain.P[:, iy:] = 0
        chain.P[t.n:] = 0
    return EnumerationResult(float(prob), float(chain.P.sum() + chain.escaped))


def _record_times(cfg: EnumerationConfig, times: Sequence[int]) -> EnumerationResult:
    times = tuple(int(v) for v in times)
    n = len(times) + 1
    chain = _Chain(cfg.dist, n, cfg.weak)
    _check_bound(len(chain.p), cfg.horizon, n)
    if not times:
        return EnumerationResult(1.0 - chain.escaped, chain.escaped)
    schedule = {tm: m for m, tm in enumerate(times, start=2)}
    steps = min(cfg.horizon, times[-1]) - 1
    for clock in range(2, 2 + steps):
        stayed, moved = chain.step()
        due = schedule.get(clock)
        if due is None:
            chain.P = stayed
        else:
            chain.P = np.zeros_like(stayed)
            chain.P[due] = moved[due]
    if cfg.horizon >= times[-1]:
        return EnumerationResult(float(chain.P[n].sum()), float(chain.escaped))
    return EnumerationResult(0.0, float(chain.P.sum() + chain.escaped))


def _no_further(cfg: EnumerationConfig) -> EnumerationResult:
    chain = _Chain(cfg.dist, 2, cfg.weak)
    _check_bound(len(chain.p), cfg.horizon, 2)
    if chain.leftover > 0:
        # unbounded support: the first value is never the upper endpoint
        prob = 0.0
    else:
        prob = float(chain.p[-1]) if not cfg.weak else 0.0
    undecided = chain.P[1].copy()
    if not cfg.weak:
        undecided[-1] = 0.0 if chain.leftover == 0 else undecided[-1]
    undecided_mass = float(np.sum(undecided * chain.stay ** (cfg.horizon - 1)))
    return EnumerationResult(prob, undecided_mass + chain.escaped)


def _exists(cfg: EnumerationConfig, n: int) -> EnumerationResult:
    if n < 1:
        raise ValueError("ordinal must be >= 1")
    chain = _Chain(cfg.dist, n, cfg.weak)
    _check_bound(len(chain.p), cfg.horizon, n)
    prob = chain.P[n].sum()
    chain.P[n] = 0
    stuck = (not cfg.weak) and chain.leftover == 0
    if stuck:
        chain.P[:, -1] = 0
    for _ in range(cfg.horizon - 1):
        stayed, moved = chain.step()
        prob += moved[n].sum()
        moved[n] = 0
        chain.P = stayed + moved
        if stuck:
            chain.P[:, -1] = 0
    return EnumerationResult(float(prob), float(chain.P.sum() + chain.escaped))
