import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from recordlaws.dist import Exponential, FiniteDiscrete, Geometric, UniformCont, uniform_on
from recordlaws.errors import UnsupportedVariant
from recordlaws.mc import (
    McConfig,
    proportion_report,
    renyi_sample_records,
    simulate_poset_batch,
    simulate_record_batch,
    simulate_records,
)
from recordlaws.order import OrderedSpace, RecordKind

U01 = UniformCont(0.0, 1.0)
KINDS = ["strong_upper", "weak_upper", "strong_lower", "weak_lower"]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("dist", [U01, uniform_on(5), Geometric(0.3)], ids=["uniform", "five", "geometric"])
def test_batch_matches_literal_extraction(dist, kind):
    n, cfg = 4, McConfig(300, 200, seed=21)
    batch = simulate_record_batch(dist, n, cfg, kind)
    seqs = list(simulate_records(dist, kind=kind, cfg=McConfig(300, 200, seed=21, target_records=n)))
    for i, rs in enumerate(seqs):
        t = [x for x in batch.times[i] if x > 0]
        assert t == list(rs.times)
        np.testing.assert_allclose([v for v in batch.values[i] if not math.isnan(v)], [float(v) for v in rs.values])


def test_long_trials_cross_rng_boundary():
    cfg = McConfig(200, 50_000, seed=3)
    batch = simulate_record_batch(U01, 6, cfg)
    seqs = list(simulate_records(U01, cfg=McConfig(200, 50_000, seed=3, target_records=6)))
    assert batch.times.max() > 4096
    for i, rs in enumerate(seqs):
        assert [x for x in batch.times[i] if x > 0] == list(rs.times)


def test_workers_do_not_change_results():
    cfg = McConfig(2000, 3000, seed=8)
    a = simulate_record_batch(U01, 3, cfg)
    b = simulate_record_batch(U01, 3, McConfig(2000, 3000, seed=8, workers=3))
    np.testing.assert_array_equal(a.times, b.times)
    np.testing.assert_array_equal(a.values, b.values)


def test_split_slices_concatenate():
    cfg = McConfig(1000, 500, seed=2)
    whole = simulate_record_batch(U01, 3, cfg)
    parts = [simulate_record_batch(U01, 3, c) for c in cfg.split(4)]
    from recordlaws.mc import RecordBatch
    merged = RecordBatch.concat(parts)
    np.testing.assert_array_equal(whole.times, merged.times)


def test_determinism():
    cfg = McConfig(500, 1000, seed=99)
    a = simulate_record_batch(Exponential(1.0), 3, cfg)
    b = simulate_record_batch(Exponential(1.0), 3, cfg)
    np.testing.assert_array_equal(a.times, b.times)
    assert not np.array_equal(a.times, simulate_record_batch(Exponential(1.0), 3, McConfig(500, 1000, seed=100)).times)


def test_single_atom_one_strong_record():
    d = FiniteDiscrete((2,), (Fraction(1),))
    batch = simulate_record_batch(d, 3, McConfig(100, 50, seed=1))
    assert np.all(batch.counts == 1) and np.all(batch.exhausted)
    assert batch.truncation_mass == 0
    for rs in simulate_records(d, cfg=McConfig(20, 50, seed=1)):
        assert list(rs.times) == [1]
    weak = simulate_record_batch(d, 3, McConfig(100, 50, seed=1), "weak_upper")
    assert np.all(weak.times == [1, 2, 3])


def test_first_gap_is_half_on_uniform():
    batch = simulate_record_batch(U01, 2, McConfig(100_000, 10_000, seed=5))
    rep = proportion_report(batch.times[:, 1] == 2, 5)
    assert rep.within(0.5)


def test_truncation_mass_counts_undecided():
    batch = simulate_record_batch(U01, 3, McConfig(2000, 20, seed=6))
    assert batch.truncation_mass == pytest.approx(np.mean(batch.times[:, -1] == 0))
    assert 0 < batch.truncation_mass < 1


class TestRenyi:
    def test_n1_is_plain_sampling(self):
        x = renyi_sample_records(Exponential(2.0), 1, McConfig(5000, 1, seed=4))[:, 0]
        assert stats.kstest(x, stats.expon(scale=0.5).cdf).statistic < stats.kstwo.ppf(0.99, len(x))

    def test_records_increase(self):
        x = renyi_sample_records(U01, 5, McConfig(1000, 1, seed=4))
        assert np.all(np.diff(x, axis=1) >= 0)

    def test_exponential_is_gamma(self):
        x = renyi_sample_records(Exponential(1.0), 4, McConfig(5000, 1, seed=9))[:, 3]
        assert stats.kstest(x, stats.gamma(4).cdf).statistic < stats.kstwo.ppf(0.99, len(x))

    def test_uniform_second_record_cdf(self):
        x = renyi_sample_records(U01, 2, McConfig(50_000, 1, seed=10))[:, 1]
        assert proportion_report(x <= 0.5, 10).within(0.5 - 0.5 * math.log(2))

    def test_discrete_rejected(self):
        with pytest.raises(UnsupportedVariant):
            renyi_sample_records(Geometric(0.5), 2, McConfig(10, 1, seed=1))


class TestPoset:
    def test_dimension_one_matches_scalar(self):
        cfg = McConfig(300, 40, seed=12)
        pb = simulate_poset_batch(U01, 1, cfg)
        batch = simulate_record_batch(U01, 40, cfg)
        for i in range(cfg.trials):
            t = np.nonzero(pb.is_record[i])[0] + 1
            assert list(t) == [x for x in batch.times[i] if x > 0]

    def test_matches_literal_extraction(self):
        cfg = McConfig(100, 30, seed=13)
        pb = simulate_poset_batch(U01, 2, cfg)
        for i, rs in enumerate(simulate_records(U01, OrderedSpace(2), cfg=cfg)):
            assert list(np.nonzero(pb.is_record[i])[0] + 1) == list(rs.times)
        assert np.array_equal(pb.ordinal[:, -1], pb.is_record.sum(axis=1))

    def test_lower_kind_is_negation(self):
        cfg = McConfig(200, 30, seed=14)
        a = simulate_poset_batch(U01, 2, cfg, RecordKind.STRONG_LOWER)
        for i, rs in enumerate(simulate_records(U01, OrderedSpace(2), "strong_lower", cfg)):
            assert list(np.nonzero(a.is_record[i])[0] + 1) == list(rs.times)
