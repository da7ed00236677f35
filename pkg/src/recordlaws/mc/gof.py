"""Goodness-of-fit tests with fixed alpha = 0.01 critical values."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from ..errors import DegenerateSample, InsufficientSamples

__all__ = [
    "GofReport",
    "gof_chi_square",
    "gof_ks",
    "gof_ks_two_sample",
    "increment_independence",
    "MIN_SAMPLES",
    "ALPHA",
    "CORRELATION_Z_THRESHOLD",
]

MIN_SAMPLES = 1000
ALPHA = 0.01
CORRELATION_Z_THRESHOLD = 4.0


@dataclass(frozen=True)
class GofReport:
    test: str
    statistic: float
    threshold: float
    passed: bool
    cells_or_n: int

    def __post_init__(self):
        if self.passed != (self.statistic <= self.threshold):
            raise ValueError("passed must equal statistic <= threshold")

    @classmethod
    def of(cls, test: str, statistic: float, threshold: float, cells_or_n: int) -> "GofReport":
        return cls(test, float(statistic), float(threshold), bool(statistic <= threshold), int(cells_or_n))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _require(n: int) -> None:
    if n < MIN_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_SAMPLES} samples, got {n}")


def _count_cells(samples: np.ndarray, cells: np.ndarray) -> np.ndarray:
    """Occurrences of each row of ``cells`` among the rows of ``samples``."""
    uniq, counts = np.unique(samples, axis=0, return_counts=True)
    lookup = {tuple(r): c for r, c in zip(uniq.tolist(), counts.tolist())}
    return np.array([lookup.get(tuple(r), 0) for r in cells.tolist()], dtype=float)


def gof_chi_square(samples, pmf: Callable, cells: Sequence, min_expected: float = 5.0) -> GofReport:
    """Pearson chi-square of ``samples`` against ``pmf`` on the listed ``cells``.

    Everything outside ``cells`` forms one extra cell. Walking the cells in
    the given order, neighbours are pooled until each group expects at least
    ``min_expected`` counts; a short final group joins the previous one.

    Parameters
    ----------
    samples : array_like, shape (N,) or (N, k)
        Observed outcomes (scalars or k-tuples).
    pmf : callable
        Probability of one cell; called with a scalar or a tuple.
    cells : sequence
        Outcomes given their own cell, in pooling order.
    """
    samples = np.asarray(samples)
    N = len(samples)
    _require(N)
    rows = samples.reshape(N, -1)
    cell_rows = np.asarray(cells).reshape(len(cells), -1)
    observed = _count_cells(rows, cell_rows)
    probs = np.array([float(pmf(c)) for c in cells])
    other_obs = N - observed.sum()
    other_p = max(0.0, 1.0 - probs.sum())
    obs = np.append(observed, other_obs)
    exp = np.append(probs, other_p) * N
    groups_o, groups_e = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(obs, exp):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            groups_o.append(acc_o)
            groups_e.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if groups_e:
            groups_o[-1] += acc_o
            groups_e[-1] += acc_e
        else:
            groups_o.append(acc_o)
            groups_e.append(acc_e)
    go, ge = np.array(groups_o), np.array(groups_e)
    if len(go) < 2:
        raise InsufficientSamples("fewer than two cells after pooling")
    stat = float(np.sum((go - ge) ** 2 / ge))
    return GofReport.of("ChiSquare", stat, stats.chi2.ppf(1 - ALPHA, len(go) - 1), len(go))


def gof_ks(samples, cdf: Callable) -> GofReport:
    """One-sample Kolmogorov-Smirnov against a continuous ``cdf``."""
    x = np.asarray(samples, dtype=float)
    _require(len(x))
    stat = stats.kstest(x, cdf).statistic
    return GofReport.of("KolmogorovSmirnov", stat, stats.kstwo.ppf(1 - ALPHA, len(x)), len(x))


def gof_ks_two_sample(a, b) -> GofReport:
    """Two-sample Kolmogorov-Smirnov with the asymptotic alpha = 0.01 critical value."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _require(min(len(a), len(b)))
    stat = stats.ks_2samp(a, b).statistic
    scale = math.sqrt((len(a) + len(b)) / (len(a) * len(b)))
    return GofReport.of("KolmogorovSmirnov", stat, stats.kstwobign.ppf(1 - ALPHA) * scale, min(len(a), len(b)))


def increment_independence(samples) -> GofReport:
    """Largest |Pearson correlation| * sqrt(N) over all pairs of columns, against 4.

    Parameters
    ----------
    samples : array_like, shape (N, m)
        One row per trial; columns are the variables to compare (m >= 2).
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 2 or x.shape[1] < 2:
        raise ValueError("need a 2-D sample with at least two columns")
    N = x.shape[0]
    _require(N)
    if np.any(np.std(x, axis=0) == 0):
        raise DegenerateSample("a column has zero variance")
    rho = np.corrcoef(x, rowvar=False)
    off = np.abs(rho[~np.eye(rho.shape[0], dtype=bool)])
    return GofReport.of("CorrelationZ", off.max() * math.sqrt(N), CORRELATION_Z_THRESHOLD, N)
