"""Point estimates with standard errors and truncation accounting."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from ..dist import Distribution
from ..errors import TooFewConditioningHits, UnsupportedVariant
from .simulate import McConfig, simulate_poset_batch, simulate_record_batch

__all__ = [
    "McReport",
    "proportion_report",
    "estimate_pmf",
    "estimate_no_further_record",
    "estimate_poset_transition",
    "MIN_CONDITIONING_HITS",
]

MIN_CONDITIONING_HITS = 1000


@dataclass(frozen=True)
class McReport:
    estimate: float
    stderr: float
    trials_used: int
    truncation_mass: float
    seed: int

    def __post_init__(self):
        if not 0 <= self.truncation_mass <= 1:
            raise ValueError("truncation mass must lie in [0, 1]")

    def within(self, target: float, k: float = 4.0) -> bool:
        """True when |estimate - target| <= k standard errors."""
        return abs(self.estimate - target) <= k * self.stderr

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def proportion_report(indicator, seed: int, truncation_mass: float = 0.0) -> McReport:
    """Mean of a 0/1 (or real) sample with stderr = sample std / sqrt(N)."""
    x = np.asarray(indicator, dtype=float)
    n = len(x)
    if n == 0:
        return McReport(math.nan, math.nan, 0, truncation_mass, seed)
    sd = float(np.std(x, ddof=1)) if n > 1 else 0.0
    return McReport(float(x.mean()), sd / math.sqrt(n), n, float(truncation_mass), seed)


def estimate_pmf(samples, event, seed: int = 0, truncation_mass: float = 0.0) -> McReport:
    """Estimate P(event) from per-trial samples.

    ``event`` is either a predicate on the sample array (returning a boolean
    array) or an outcome compared for equality (row-wise for 2-D samples).
    """
    s = np.asarray(samples)
    if callable(event):
        hit = np.asarray(event(s), dtype=bool)
    elif s.ndim == 2:
        hit = np.all(s == np.asarray(event)[None, :], axis=1)
    else:
        hit = s == event
    return proportion_report(hit, seed, truncation_mass)


def estimate_no_further_record(dist: Distribution, cfg: McConfig) -> McReport:
    """Estimate P(U(2) = infinity) among trials decided within the horizon.

    A trial is decided "no further record" when its first value is an atom at
    the upper endpoint, and "further record" once something beats it. The
    truncation mass is the mean of F(x_1)^(horizon-1) over trials that could
    still be beaten, which bounds the chance of leaving a trial undecided.
    """
    if not dist.is_discrete:
        raise UnsupportedVariant("defined for discrete laws")
    batch = simulate_record_batch(dist, 2, cfg)
    yes = batch.exhausted & (batch.times[:, 1] == 0)
    no = batch.times[:, 1] > 0
    decided = yes | no
    x1 = batch.values[:, 0]
    open_ = x1 < float(dist.endpoints().uep)
    cdf = np.array([float(dist.cdf(v)) for v in x1[open_]])
    bound = float(np.sum(cdf ** (cfg.horizon - 1)) / len(x1))
    return proportion_report(yes[decided], cfg.seed, min(1.0, bound))


def estimate_poset_transition(dist: Distribution, dim: int, k: int, j: int, cfg: McConfig,
                              n: Optional[int] = None) -> McReport:
    """Estimate P(U(n+1) = j | U(n) = k) for iid vectors under the componentwise order.

    Trials are kept (rejection) when observation ``k`` is a record, and also
    the n-th one if ``n`` is given. Each coordinate is drawn from ``dist``
    independently.

    Raises
    ------
    TooFewConditioningHits
        Fewer than 1000 trials satisfy the condition.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if j <= k:
        return McReport(0.0, 0.0, 0, 0.0, cfg.seed)
    batch = simulate_poset_batch(dist, dim, McConfig(cfg.trials, j, cfg.seed, first_trial=cfg.first_trial))
    hit = batch.is_record[:, k - 1].copy()
    if n is not None:
        hit &= batch.ordinal[:, k - 1] == n
    hits = int(hit.sum())
    if hits < MIN_CONDITIONING_HITS:
        raise TooFewConditioningHits(f"only {hits} trials satisfy the condition")
    after = batch.is_record[hit, k:j]
    success = after[:, -1] & ~after[:, :-1].any(axis=1)
    return proportion_report(success, cfg.seed, 0.0)
