"""The acceptance suite: every closed-form law checked against an oracle or simulation.

Each criterion returns a :class:`CriterionResult` holding named
:class:`Check` rows. ``run_suite("core", seed)`` runs them at full size;
``"quick"`` shrinks the Monte-Carlo sizes for smoke runs. Results (minus
wall-clock runtimes) are a pure function of the suite name and the seed.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import special

from . import laws
from .dist import Distribution, Exponential, Geometric, UniformCont, uniform_on
from .extract import extract_all
from .mc import rng
from .mc.estimators import estimate_no_further_record, estimate_poset_transition, proportion_report
from .mc.gof import gof_chi_square, gof_ks, gof_ks_two_sample, increment_independence
from .mc.simulate import McConfig, RecordBatch, renyi_sample_records, simulate_record_batch
from .oracle import (
    EnumerationConfig,
    GammaKernel,
    HazardProduct,
    InterRecordPmf,
    NoFurtherRecord,
    QuadratureConfig,
    exact_record_query,
    simplex_quadrature,
)
from .order import OrderedSpace, RecordKind

__all__ = [
    "Check",
    "CriterionResult",
    "SuiteSizes",
    "SUITES",
    "CRITERIA",
    "run_criterion",
    "run_suite",
    "suite_summary",
    "suite_table_rows",
]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    observed: float | None = None
    expected: float | None = None
    tolerance: float | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "observed": _clean(self.observed),
            "expected": _clean(self.expected),
            "tolerance": _clean(self.tolerance),
        }


def _clean(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else str(v)


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check]
    runtime: float = field(default=0.0, compare=False)
    runtime_limit: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def within_runtime(self) -> bool:
        return self.runtime_limit is None or self.runtime < self.runtime_limit

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        bad = self.failures()
        tail = f"; failing: {', '.join(c.name for c in bad)}" if bad else ""
        return f"criterion {self.number:>2} {status}  {self.title} ({len(self.checks)} checks, {self.runtime:.1f}s){tail}"


@dataclass(frozen=True)
class SuiteSizes:
    interrecord_trials: int = 10**6
    decided_trials: int = 10**5
    record_horizon: int = 2**20
    geometric_trials: int = 10**5
    finiteness_trials: int = 10**5
    finiteness_horizon: int = 200
    max_cdf_trials: int = 10**6
    max_cdf_vectors: int = 20
    poset_sequences: int = 10**4
    poset_trials: int = 10**5


SUITES = {
    "core": SuiteSizes(),
    "quick": SuiteSizes(
        interrecord_trials=20_000,
        decided_trials=5_000,
        record_horizon=2**16,
        geometric_trials=5_000,
        finiteness_trials=5_000,
        max_cdf_trials=20_000,
        max_cdf_vectors=5,
        poset_sequences=300,
        poset_trials=20_000,
    ),
}


def _seed(seed: int, number: int, salt: int = 0) -> int:
    return int(rng.mix64(np.array([seed * 1_000_003 + number * 101 + salt], dtype=np.uint64))[0] >> np.uint64(1))


class _Context:
    """Per-run cache so criteria can share one expensive simulation."""

    def __init__(self, seed: int, sizes: SuiteSizes):
        self.seed = seed
        self.sizes = sizes
        self._cache: dict = {}

    def cached(self, key, fn: Callable):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def uniform_batch(self) -> RecordBatch:
        """Uniform(0,1) streams up to their third record, 11 observations each."""
        return self.cached(
            "uniform",
            lambda: simulate_record_batch(UniformCont(0, 1), 3, McConfig(self.sizes.interrecord_trials, 11, _seed(self.seed, 1))),
        )

    def exponential_records(self, theta: float, n: int = 5) -> np.ndarray:
        return self.cached(("exp", theta), lambda: collect_decided(
            Exponential(theta), n, self.sizes.decided_trials, self.sizes.record_horizon, _seed(self.seed, 4, int(theta))))


def collect_decided(dist: Distribution, n: int, target: int, horizon: int, seed: int) -> np.ndarray:
    """Record values (X^(1..n)) of the first ``target`` trials, in trial order, that reach n records."""
    rows, first = [], 0
    have = 0
    while have < target:
        want = target - have
        chunk = max(want + want // 50 + 16, 1)
        b = simulate_record_batch(dist, n, McConfig(chunk, horizon, seed, first_trial=first))
        vals = b.values[b.decided]
        rows.append(vals)
        have += len(vals)
        first += chunk
    return np.concatenate(rows)[:target]


# -- criteria ----------------------------------------------------------------


def _c1(ctx: _Context) -> list[Check]:
    out = []
    u64 = uniform_on(64)
    for k in range(1, 11):
        law = laws.interrecord_joint_pmf([k]).value
        prob, trunc = exact_record_query(EnumerationConfig(u64, k + 1, InterRecordPmf((k,))))
        tol = trunc + 1e-3
        out.append(Check(f"a: k={k} enumeration on 64-point uniform", abs(prob - law) <= tol, prob, law, tol))
    b = ctx.uniform_batch()
    gap = np.where(b.times[:, 1] > 0, b.times[:, 1] - 1, 0)
    for k in range(1, 11):
        law = laws.interrecord_joint_pmf([k]).value
        rep = proportion_report(gap == k, ctx.seed)
        out.append(Check(f"b: k={k} simulation on Uniform(0,1)", rep.within(law), rep.estimate, law, 4 * rep.stderr))
    return out


def _c2(ctx: _Context) -> list[Check]:
    b = ctx.uniform_batch()
    decided = b.times[:, 2] > 0
    pairs = np.where(decided[:, None], np.diff(b.times, axis=1), 0)
    cells = [(k, l) for k in range(1, 6) for l in range(1, 6)]
    rep = gof_chi_square(pairs, lambda c: laws.interrecord_joint_pmf(list(c)).value, cells)
    return [Check(f"chi-square over {rep.cells_or_n} pooled cells", rep.passed, rep.statistic, None, rep.threshold)]


def _c3(ctx: _Context) -> list[Check]:
    tested = mismatched = 0
    for length in range(1, 4):
        for ell in itertools.combinations(range(2, 31), length):
            gaps = [ell[0] - 1] + [b - a for a, b in zip(ell, ell[1:])]
            tested += 1
            if laws.record_times_joint_pmf(ell).exact != laws.interrecord_joint_pmf(gaps).exact:
                mismatched += 1
    return [Check(f"exact identity on {tested} tuples", mismatched == 0, mismatched, 0, 0)]


def _gamma_cdf(dist: Distribution, n: int) -> Callable:
    # P(X^(n) <= x) = P(Gamma(n, 1) <= R(x)) integrates the marginal density
    return lambda x: special.gammainc(n, np.asarray(dist.cum_hazard(np.maximum(x, 0.0))))


def _c4(ctx: _Context) -> list[Check]:
    d = Exponential(1.0)
    direct = ctx.exponential_records(1.0)
    renyi = renyi_sample_records(d, 4, McConfig(ctx.sizes.decided_trials, 1, _seed(ctx.seed, 4, 99)))
    out = []
    for n in (2, 3, 4):
        cdf = _gamma_cdf(d, n)
        for label, sample in (("direct", direct[:, n - 1]), ("renyi", renyi[:, n - 1])):
            r = gof_ks(sample, cdf)
            out.append(Check(f"n={n} {label} KS", r.passed, r.statistic, None, r.threshold))
        r = gof_ks_two_sample(direct[:, n - 1], renyi[:, n - 1])
        out.append(Check(f"n={n} direct vs renyi two-sample KS", r.passed, r.statistic, None, r.threshold))
    return out


def _c5(ctx: _Context) -> list[Check]:
    out = []
    for theta in (1.0, 2.0):
        vals = ctx.exponential_records(theta)
        inc = np.diff(np.concatenate([np.zeros((len(vals), 1)), vals], axis=1), axis=1)
        d = Exponential(theta)
        for j in range(5):
            r = gof_ks(inc[:, j], d.cdf)
            out.append(Check(f"theta={theta:g} increment {j + 1} KS vs Exp", r.passed, r.statistic, None, r.threshold))
        r = increment_independence(inc)
        out.append(Check(f"theta={theta:g} pairwise correlation z", r.passed, r.statistic, None, r.threshold))
    return out


def _c6(ctx: _Context) -> list[Check]:
    out = []
    for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        g = Geometric(p)
        q = 1 - p
        bad = tested = 0
        for n in range(1, 5):
            for ys in itertools.combinations(range(1, 13), n):
                v = laws.discrete_record_joint_pmf(g, ys).exact
                kn = ys[-1]
                tested += 1
                if v != (p / q) ** (n - 1) * q ** (kn - 1) * p or v != (p / q) ** n * q**kn:
                    bad += 1
        out.append(Check(f"p={p} exact closed form on {tested} tuples", bad == 0, bad, 0, 0))
        vals = collect_decided(g, 3, ctx.sizes.geometric_trials, 2**20, _seed(ctx.seed, 6, p.denominator * 10 + p.numerator))
        inc = np.diff(np.concatenate([np.zeros((len(vals), 1)), vals], axis=1), axis=1).astype(int)
        pf = float(p)
        for j in range(3):
            r = gof_chi_square(inc[:, j], lambda k: pf * (1 - pf) ** (k - 1), list(range(1, 41)))
            out.append(Check(f"p={p} increment {j + 1} chi-square vs Geometric", r.passed, r.statistic, None, r.threshold))
    return out


def _compositions(total_max: int, parts: int):
    for ks in itertools.product(range(1, total_max + 1), repeat=parts):
        if sum(ks) <= total_max:
            yield ks


def _c7(ctx: _Context) -> list[Check]:
    out = []
    for d in (UniformCont(0, 1), Exponential(1.0)):
        worst, count, converged = 0.0, 0, True
        for n in (1, 2, 3):
            for ks in _compositions(8, n):
                r = simplex_quadrature(QuadratureConfig(d, n), GammaKernel(ks))
                worst = max(worst, abs(r.value - float(laws.gamma_integral(ks))))
                converged &= r.converged
                count += 1
        name = type(d).__name__
        out.append(Check(f"{name}: max error over {count} exponent vectors", worst <= 1e-6 and converged, worst, 0, 1e-6))
    return out


def _c8(ctx: _Context) -> list[Check]:
    out = []
    cases = {
        UniformCont(0, 1): [(None, 0.5), (0.25, 0.5), (0.1, 0.9)],
        Exponential(1.0): [(None, 2.0), (0.5, 3.0), (1.0, 1.5)],
    }
    for d, bounds in cases.items():
        for z, y in bounds:
            for n in range(1, 5):
                r = simplex_quadrature(QuadratureConfig(d, n - 1, (z, y)), HazardProduct())
                law = laws.hazard_simplex_integral(d, n, z, y)
                err = abs(r.value - law)
                zs = "lep" if z is None else f"{z:g}"
                out.append(Check(f"{type(d).__name__} n={n} z={zs} y={y:g}", err <= 1e-6, r.value, law, 1e-6))
    return out


def _c9(ctx: _Context) -> list[Check]:
    out = []
    H = ctx.sizes.finiteness_horizon
    for m in range(2, 11):
        d = uniform_on(m)
        law = laws.prob_no_further_record(d).value
        rep = estimate_no_further_record(d, McConfig(ctx.sizes.finiteness_trials, H, _seed(ctx.seed, 9, m)))
        ok = rep.within(law) and rep.truncation_mass < 1e-8
        out.append(Check(f"m={m} simulation (truncation {rep.truncation_mass:.1e})", ok, rep.estimate, law, 4 * rep.stderr))
        prob, trunc = exact_record_query(EnumerationConfig(d, H, NoFurtherRecord()))
        out.append(Check(f"m={m} enumeration", prob - 1e-12 <= law <= prob + trunc + 1e-12, prob, law, trunc))
    return out


def _c10(ctx: _Context) -> list[Check]:
    sizes = ctx.sizes
    T = sizes.max_cdf_trials
    keys = rng.trial_keys(_seed(ctx.seed, 10), np.arange(T))
    M = np.maximum.accumulate(rng.uniforms(keys, 0, 4), axis=1)
    # thresholds kept away from 0 so every event has many hits
    ykeys = rng.trial_keys(_seed(ctx.seed, 10, 1), np.arange(sizes.max_cdf_vectors), rng.STREAM_AUX)
    ys = 0.3 + 0.7 * rng.uniforms(ykeys, 0, 4)
    d = UniformCont(0, 1)
    out = []
    for i, y in enumerate(ys):
        law = laws.joint_max_cdf(d, y).value
        rep = proportion_report(np.all(M <= y[None, :], axis=1), ctx.seed)
        out.append(Check(f"vector {i + 1}", rep.within(law), rep.estimate, law, 4 * rep.stderr))
    return out


def _random_sequences(count: int, seed: int):
    gen = np.random.default_rng(seed)
    for i in range(count):
        length = int(gen.integers(1, 21))
        if i % 2:
            yield [int(v) for v in gen.integers(-3, 4, size=length)]
        else:
            yield [float(v) for v in gen.normal(size=length)]


def _same_times(a, b) -> bool:
    return a.times == b.times


def _c11(ctx: _Context) -> list[Check]:
    n = ctx.sizes.poset_sequences
    line, vec = OrderedSpace(), OrderedSpace(1)
    seqs = list(_random_sequences(n, _seed(ctx.seed, 11)))
    mismatch = 0
    for s in seqs:
        for kind in RecordKind:
            a = extract_all(s, kind, line)
            b = extract_all([(x,) for x in s], kind, vec)
            if a.times != b.times or [(v,) for v in a.values] != b.values:
                mismatch += 1
    out = [Check(f"d=1 extraction equals real-line extraction ({n} sequences x 4 kinds)", mismatch == 0, mismatch, 0, 0)]
    d = UniformCont(0, 1)
    for k, j in ((1, 2), (2, 3), (2, 4), (3, 5)):
        law = laws.record_time_transition_pmf(k, j).value
        rep = estimate_poset_transition(d, 1, k, j, McConfig(ctx.sizes.poset_trials, j, _seed(ctx.seed, 11, k * 10 + j)))
        out.append(Check(f"d=1 transition k={k} j={j}", rep.within(law), rep.estimate, law, 4 * rep.stderr))
    maps = {"exp": math.exp, "affine": lambda x: 3.0 * x - 7.0, "cube": lambda x: x**3}
    for name, h in maps.items():
        bad = 0
        for s in seqs:
            xs = [float(v) for v in s]
            for kind in RecordKind:
                a = extract_all(xs, kind)
                b = extract_all([h(x) for x in xs], kind)
                if a.times != b.times or [h(v) for v in a.values] != b.values:
                    bad += 1
        out.append(Check(f"re-scaling by {name}", bad == 0, bad, 0, 0))
    bad = bad_pos = 0
    for s in seqs:
        for kind in (RecordKind.STRONG_LOWER, RecordKind.WEAK_LOWER):
            a = extract_all(s, kind)
            b = extract_all([-x for x in s], kind.dual())
            if a.times != b.times or [-v for v in a.values] != b.values:
                bad += 1
            pos = [math.exp(float(x)) for x in s]
            if extract_all(pos, kind).times != extract_all([1.0 / x for x in pos], kind.dual()).times:
                bad_pos += 1
    out.append(Check("negation duality", bad == 0, bad, 0, 0))
    out.append(Check("reciprocal duality on positive data", bad_pos == 0, bad_pos, 0, 0))
    return out


CRITERIA: dict[int, tuple[str, Callable, float | None]] = {
    1: ("inter-record law vs enumeration and simulation", _c1, 30.0),
    2: ("joint law of two gaps vs simulation", _c2, None),
    3: ("record-time law equals shifted inter-record law", _c3, None),
    4: ("marginal record density: direct and Renyi samples", _c4, None),
    5: ("exponential record increments are iid exponential", _c5, None),
    6: ("geometric records: closed form and increments", _c6, None),
    7: ("ordered-simplex integral of F powers is distribution-free", _c7, 60.0),
    8: ("hazard-product integrals", _c8, None),
    9: ("no further record has the endpoint atom's mass", _c9, None),
    10: ("joint cdf of partial maxima", _c10, None),
    11: ("componentwise order, re-scaling and duality", _c11, None),
}


def run_criterion(number: int, seed: int = 7, suite: str = "core", ctx: _Context | None = None) -> CriterionResult:
    if ctx is None:
        ctx = _Context(seed, SUITES[suite])
    title, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    checks = fn(ctx)
    return CriterionResult(number, title, checks, time.perf_counter() - start, limit)


def run_suite(suite: str = "core", seed: int = 7, only=None) -> list[CriterionResult]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    ctx = _Context(seed, SUITES[suite])
    numbers = sorted(CRITERIA) if only is None else sorted(only)
    return [run_criterion(n, ctx=ctx) for n in numbers]


def suite_summary(results: list[CriterionResult], suite: str, seed: int) -> dict:
    return {
        "suite": suite,
        "seed": seed,
        "pass": all(r.passed for r in results),
        "criteria": [r.to_dict() for r in results],
    }


def suite_table_rows(results: list[CriterionResult]) -> list[list]:
    rows = [["criterion", "check", "observed", "expected", "tolerance", "pass"]]
    for r in results:
        for c in r.checks:
            d = c.to_dict()
            rows.append([r.number, c.name, d["observed"], d["expected"], d["tolerance"], int(c.passed)])
    return rows
