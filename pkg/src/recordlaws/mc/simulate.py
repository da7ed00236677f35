"""Direct simulation of iid streams and the records they contain.

Observation ``t`` (1-based) of trial ``i`` is built from the uniforms with
draw indices ``(t-1)*dim .. (t-1)*dim + dim-1`` of trial ``i``'s keyed
stream, pushed through the quantile function. Because every draw is a
function of (seed, trial, index), the batch scanner, the per-trial
iterator and any split of trials across workers see the same numbers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterator, Optional

import numpy as np

from ..dist import Distribution
from ..errors import UnsupportedVariant
from ..extract import Extractor, RecordSequence
from ..order import OrderedSpace, RecordKind
from . import rng

__all__ = [
    "McConfig",
    "RecordBatch",
    "PosetBatch",
    "simulate_records",
    "simulate_record_batch",
    "simulate_poset_batch",
    "renyi_sample_records",
]

MAX_BLOCK_ELEMENTS = 1 << 22
STRAGGLER_TRIALS = 64


@dataclass(frozen=True)
class McConfig:
    """Monte-Carlo run parameters.

    ``first_trial`` offsets the trial indices, so disjoint slices of one
    large run can be simulated separately and concatenated.
    """

    trials: int
    horizon: int
    seed: int
    target_records: Optional[int] = None
    first_trial: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.target_records is not None and self.target_records < 1:
            raise ValueError("target_records must be >= 1")

    def split(self, parts: int) -> list["McConfig"]:
        """Contiguous trial slices covering this run, in trial order."""
        parts = max(1, min(parts, self.trials))
        bounds = np.linspace(0, self.trials, parts + 1).astype(int)
        return [
            replace(self, trials=int(b - a), first_trial=self.first_trial + int(a), workers=1)
            for a, b in zip(bounds[:-1], bounds[1:])
            if b > a
        ]


@dataclass(frozen=True)
class RecordBatch:
    """First ``n`` record times and values for a batch of scalar trials.

    ``times[i, m]`` is U(m+1) for trial ``i`` or 0 if that record did not
    occur within the horizon; ``values`` holds NaN there. ``exhausted`` marks
    trials whose current record sits on an atom at the endpoint, so no
    further record can ever occur.
    """

    times: np.ndarray
    values: np.ndarray
    exhausted: np.ndarray
    horizon: int
    seed: int

    @property
    def trials(self) -> int:
        return len(self.times)

    @property
    def counts(self) -> np.ndarray:
        return np.count_nonzero(self.times, axis=1)

    @property
    def decided(self) -> np.ndarray:
        """Trials whose n-th record occurred within the horizon."""
        return self.times[:, -1] > 0

    @property
    def truncation_mass(self) -> float:
        """Fraction of trials still able to produce the n-th record after the horizon."""
        return float(np.mean(~self.decided & ~self.exhausted))

    @property
    def deltas(self) -> np.ndarray:
        return np.diff(self.times, axis=1)

    @staticmethod
    def concat(parts: list["RecordBatch"]) -> "RecordBatch":
        return RecordBatch(
            np.concatenate([p.times for p in parts]),
            np.concatenate([p.values for p in parts]),
            np.concatenate([p.exhausted for p in parts]),
            parts[0].horizon,
            parts[0].seed,
        )


def _run_split(cfg: McConfig, fn):
    if cfg.workers <= 1:
        return fn(cfg)
    pieces = cfg.split(cfg.workers)
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(fn, pieces))


class _Scorer:
    """Maps uniforms to an ordered score whose records are the records of X.

    For continuous laws the quantile is strictly increasing on (0, 1), so
    records of the uniforms are records of the observations and the
    quantile only needs to be applied to record values.
    """

    def __init__(self, dist: Distribution, kind: RecordKind):
        self.dist = dist
        self.sign = 1.0 if kind.is_upper else -1.0
        self.on_uniforms = not dist.is_discrete
        lep, uep, atom = dist.endpoints()
        end = uep if kind.is_upper else lep
        # a strong record at an endpoint atom can never be beaten
        self.top = None
        if dist.is_discrete and not kind.is_weak and math.isfinite(end):
            self.top = self.sign * float(end)

    def score(self, u: np.ndarray) -> np.ndarray:
        if self.on_uniforms:
            return self.sign * u
        return self.sign * np.asarray(self.dist.quantile(u), dtype=float)

    def values(self, s: np.ndarray) -> np.ndarray:
        out = np.full(s.shape, np.nan)
        ok = ~np.isnan(s)
        if self.on_uniforms:
            out[ok] = np.asarray(self.dist.quantile(self.sign * s[ok]), dtype=float)
        else:
            out[ok] = self.sign * s[ok]
        return out


def simulate_record_batch(dist: Distribution, n: int, cfg: McConfig,
                          kind: RecordKind | str = RecordKind.STRONG_UPPER) -> RecordBatch:
    """Simulate ``cfg.trials`` real-valued iid streams until their n-th record.

    Trials advance together in growing blocks of draws; the few that are
    still running after ``rng.HEAD`` draws finish one at a time.
    """
    kind = RecordKind.parse(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    if cfg.workers > 1:
        parts = _run_split(cfg, lambda c: simulate_record_batch(dist, n, c, kind))
        return RecordBatch.concat(parts)
    sc = _Scorer(dist, kind)
    weak = kind.is_weak
    T, H = cfg.trials, cfg.horizon
    keys = rng.trial_keys(cfg.seed, np.arange(cfg.first_trial, cfg.first_trial + T), rng.STREAM_OBSERVATIONS)
    times = np.zeros((T, n), dtype=np.int64)
    scores = np.full((T, n), np.nan)
    s0 = sc.score(rng.uniforms(keys, 0, 1)[:, 0])
    times[:, 0] = 1
    scores[:, 0] = s0
    count = np.ones(T, dtype=np.int64)
    inc = s0.copy()
    exhausted = np.zeros(T, dtype=bool) if sc.top is None else (inc >= sc.top)

    def still_running(idx):
        return idx[(count[idx] < n) & ~exhausted[idx]]

    active = still_running(np.arange(T))
    pos, block = 1, 16
    while active.size > STRAGGLER_TRIALS and pos < min(H, rng.HEAD):
        b = min(block, H - pos, rng.HEAD - pos, max(1, MAX_BLOCK_ELEMENTS // active.size))
        s = sc.score(rng.uniforms(keys[active], pos, b))
        run = np.maximum.accumulate(np.concatenate([inc[active, None], s], axis=1), axis=1)
        before = run[:, :-1]
        rec = s >= before if weak else s > before
        ordinal = np.cumsum(rec, axis=1) + count[active, None]
        r, c = np.nonzero(rec & (ordinal <= n))
        times[active[r], ordinal[r, c] - 1] = pos + c + 1
        scores[active[r], ordinal[r, c] - 1] = s[r, c]
        count[active] = np.minimum(ordinal[:, -1], n)
        inc[active] = run[:, -1]
        if sc.top is not None:
            exhausted[active] = inc[active] >= sc.top
        pos += b
        block *= 2
        active = still_running(active)
    for i in active:
        _finish_trial(i, keys[i], pos, n, H, sc, weak, times, scores, count, inc, exhausted)
    return RecordBatch(times, sc.values(scores), exhausted, H, cfg.seed)


def _finish_trial(i, key, pos, n, H, sc, weak, times, scores, count, inc, exhausted):
    chunk = 1 << 14
    while count[i] < n and not exhausted[i] and pos < H:
        b = min(chunk, H - pos)
        s = sc.score(rng.trial_uniforms(key, pos, b))
        start = 0
        while count[i] < n:
            hit = s[start:] >= inc[i] if weak else s[start:] > inc[i]
            j = int(np.argmax(hit))
            if not hit[j]:
                break
            j += start
            times[i, count[i]] = pos + j + 1
            scores[i, count[i]] = s[j]
            inc[i] = s[j]
            count[i] += 1
            start = j + 1
            if sc.top is not None and inc[i] >= sc.top:
                exhausted[i] = True
                break
        pos += b
        chunk = min(chunk * 2, 1 << 21)


def _observations(dist: Distribution, keys: np.ndarray, t0: int, steps: int, dim: int) -> np.ndarray:
    """Observations t0+1 .. t0+steps as an array (trials, steps, dim)."""
    u = rng.uniforms(keys, t0 * dim, steps * dim).reshape(len(keys), steps, dim)
    return np.asarray(dist.quantile(u), dtype=float)


@dataclass(frozen=True)
class PosetBatch:
    """Record indicators ``is_record[i, t-1]`` and ordinals for vector-valued trials."""

    is_record: np.ndarray
    ordinal: np.ndarray
    seed: int

    @property
    def trials(self) -> int:
        return len(self.is_record)


def simulate_poset_batch(dist: Distribution, dim: int, cfg: McConfig,
                         kind: RecordKind | str = RecordKind.STRONG_UPPER) -> PosetBatch:
    """Simulate iid vectors with independent ``dist`` coordinates under the componentwise order.

    Steps through time with all trials in lockstep, up to ``cfg.horizon``.
    ``ordinal[i, t-1]`` is the number of records among the first t observations.
    """
    kind = RecordKind.parse(kind)
    T, H = cfg.trials, cfg.horizon
    keys = rng.trial_keys(cfg.seed, np.arange(cfg.first_trial, cfg.first_trial + T), rng.STREAM_OBSERVATIONS)
    sign = 1.0 if kind.is_upper else -1.0
    is_record = np.zeros((T, H), dtype=bool)
    is_record[:, 0] = True
    steps = max(1, min(H, MAX_BLOCK_ELEMENTS // max(1, T * dim)))
    inc = None
    t = 0
    while t < H:
        b = min(steps, H - t)
        x = sign * _observations(dist, keys, t, b, dim)
        for c in range(b):
            xt = x[:, c, :]
            if inc is None:
                inc = xt.copy()
                continue
            ge = np.all(xt >= inc, axis=1)
            rec = ge if kind.is_weak else ge & np.any(xt > inc, axis=1)
            is_record[:, t + c] = rec
            inc[rec] = xt[rec]
        t += b
    return PosetBatch(is_record, np.cumsum(is_record, axis=1), cfg.seed)


def simulate_records(dist: Distribution, space: OrderedSpace | None = None,
                     kind: RecordKind | str = RecordKind.STRONG_UPPER,
                     cfg: McConfig | None = None) -> Iterator[RecordSequence]:
    """Yield one :class:`RecordSequence` per trial, extracted observation by observation.

    Stops each trial at ``cfg.horizon`` observations or once
    ``cfg.target_records`` records have been seen. Slow but literal; the
    batch functions are the fast path and are tested against this one.
    """
    if cfg is None:
        raise ValueError("a McConfig is required")
    space = space if space is not None else OrderedSpace()
    dim = space.dim or 1
    keys = rng.trial_keys(cfg.seed, np.arange(cfg.first_trial, cfg.first_trial + cfg.trials), rng.STREAM_OBSERVATIONS)
    for key in keys:
        ex = Extractor(kind, space)
        t, block = 0, 16
        while t < cfg.horizon:
            b = min(block, cfg.horizon - t)
            xs = _observations(dist, np.array([key]), t, b, dim)[0]
            for row in xs:
                ex.feed(float(row[0]) if space.dim is None else tuple(float(v) for v in row))
                if cfg.target_records and len(ex._events) >= cfg.target_records:
                    break
            if cfg.target_records and len(ex._events) >= cfg.target_records:
                break
            t += b
            block *= 2
        yield ex.result()


def renyi_sample_records(dist: Distribution, n: int, cfg: McConfig) -> np.ndarray:
    """Sample (X^(1), ..., X^(n)) as F^{-1}(1 - exp(-E_j)) from partial sums E_j of unit exponentials.

    Returns an array of shape ``(cfg.trials, n)``.
    """
    if dist.is_discrete:
        raise UnsupportedVariant("the exponential representation needs a continuous law")
    keys = rng.trial_keys(cfg.seed, np.arange(cfg.first_trial, cfg.first_trial + cfg.trials), rng.STREAM_RENYI)
    E = np.cumsum(-np.log(rng.uniforms(keys, 0, n)), axis=1)
    tail = np.maximum(np.exp(-E), np.finfo(float).tiny)
    return np.asarray(dist.quantile_upper(tail), dtype=float)
