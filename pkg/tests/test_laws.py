import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from recordlaws import laws
from recordlaws.dist import Exponential, FiniteDiscrete, Geometric, UniformCont, uniform_on
from recordlaws.errors import (
    DomainError,
    InvalidExponent,
    InvalidGap,
    InvalidTimes,
    OffSupport,
    ShapeMismatch,
    UnsupportedVariant,
)

F = Fraction
E1 = Exponential(1.0)
U01 = UniformCont(0.0, 1.0)


class TestDistributionFree:
    def test_interrecord_examples(self):
        assert laws.interrecord_joint_pmf([1]).exact == F(1, 2)
        assert laws.interrecord_joint_pmf([1, 1]).exact == F(1, 6)
        assert laws.interrecord_joint_pmf([2, 3]).exact == F(1, 60)

    def test_interrecord_pair_closed_form(self):
        for k, l in itertools.product(range(1, 8), repeat=2):
            assert laws.interrecord_joint_pmf([k, l]).exact == F(1, k * (k + l) * (k + l + 1))

    def test_interrecord_rejects_bad_gaps(self):
        with pytest.raises(InvalidGap):
            laws.interrecord_joint_pmf([1, 0])

    def test_record_times_examples(self):
        assert laws.record_times_joint_pmf([2]).exact == F(1, 2)
        assert laws.record_times_joint_pmf([2, 3]).exact == F(1, 6)
        assert laws.record_times_joint_pmf([3, 5]).exact == F(1, 40)
        for bad in ([1], [3, 3], [4, 2]):
            with pytest.raises(InvalidTimes):
                laws.record_times_joint_pmf(bad)

    def test_transition_examples(self):
        assert laws.record_time_transition_pmf(2, 3).exact == F(1, 3)
        v = laws.record_time_transition_pmf(2, 2)
        assert v.value == 0 and not v.support_flag

    def test_transition_rows_sum_to_one(self):
        k = 5
        total = sum(k / (j * (j - 1)) for j in range(k + 1, 10**6 + 1))
        assert total == pytest.approx(1, abs=1e-5)
        assert laws.record_time_transition_pmf(k, 7).exact == F(5, 42)

    def test_transition_is_ratio_of_time_laws(self):
        for ell in [(2, 3), (3, 7), (4, 5, 9)]:
            *head, j = ell
            ratio = laws.record_times_joint_pmf(ell).exact / laws.record_times_joint_pmf(head).exact
            assert ratio == laws.record_time_transition_pmf(head[-1], j).exact

    def test_gamma_examples(self):
        assert laws.gamma_integral([4]) == F(1, 4)
        assert laws.gamma_integral([3, 5]) == F(1, 3 * 8)
        assert laws.gamma_integral([1, 1, 1]) == F(1, 6)
        with pytest.raises(InvalidExponent):
            laws.gamma_integral([2, 0])

    def test_normalization_partial_sum(self):
        s = sum(1.0 / (k * (k + 1)) for k in range(1, 10**4 + 1))
        assert abs(s - 1) < 1e-3

    def test_time_identity_exhaustive_small(self):
        for length in range(1, 4):
            for ell in itertools.combinations(range(2, 16), length):
                gaps = [ell[0] - 1] + [b - a for a, b in zip(ell, ell[1:])]
                assert laws.record_times_joint_pmf(ell).exact == laws.interrecord_joint_pmf(gaps).exact


@given(st.lists(st.integers(1, 20), min_size=1, max_size=6))
def test_interrecord_equals_time_law(ks):
    ell = list(itertools.accumulate(ks, initial=1))[1:]
    assert laws.interrecord_joint_pmf(ks).exact == laws.record_times_joint_pmf(ell).exact


class TestContinuous:
    def test_marginal_examples(self):
        assert laws.record_value_marginal_pdf(E1, 2, 1.0).value == pytest.approx(math.exp(-1))
        assert laws.record_value_marginal_pdf(E1, 3, 2.0).value == pytest.approx(2 * math.exp(-2))
        for d, x in ((E1, 0.7), (U01, 0.3)):
            assert laws.record_value_marginal_pdf(d, 1, x).value == pytest.approx(d.pdf(x))

    def test_marginal_is_gamma_density_for_exponential(self):
        from scipy import stats
        for n in range(1, 6):
            for x in (0.1, 1.0, 3.5):
                assert laws.record_value_marginal_pdf(E1, n, x).value == pytest.approx(stats.gamma(n).pdf(x))

    def test_marginal_outside_support(self):
        v = laws.record_value_marginal_pdf(E1, 2, -1.0)
        assert v.value == 0 and not v.support_flag

    def test_joint_examples(self):
        xs = (0.3, 1.1, 2.0, 4.2)
        assert laws.record_value_joint_pdf(Exponential(2.0), xs).value == pytest.approx(2.0**4 * math.exp(-2 * 4.2))
        assert laws.record_value_joint_pdf(U01, (0.2, 0.5)).value == pytest.approx(1.25)
        v = laws.record_value_joint_pdf(U01, (0.5, 0.2))
        assert v.value == 0 and not v.support_flag

    def test_subvector_examples(self):
        for d in (E1, U01):
            a = laws.record_value_subvector_pdf(d, (1, 2), (0.2, 0.6)).value
            assert a == pytest.approx(laws.record_value_joint_pdf(d, (0.2, 0.6)).value)
        for x in (0.5, 1.7):
            assert laws.record_value_subvector_pdf(E1, (2,), (x,)).value == pytest.approx(x * math.exp(-x))
        assert laws.record_value_subvector_pdf(E1, (1, 3), (1.0, 2.0)).value == pytest.approx(math.exp(-2))

    def test_subvector_full_index_reduces_to_joint(self):
        xs = (0.1, 0.35, 0.6, 0.8)
        a = laws.record_value_subvector_pdf(U01, (1, 2, 3, 4), xs).value
        assert a == pytest.approx(laws.record_value_joint_pdf(U01, xs).value)

    def test_subvector_errors(self):
        with pytest.raises(ShapeMismatch):
            laws.record_value_subvector_pdf(E1, (1, 2), (0.5,))
        with pytest.raises(ShapeMismatch):
            laws.IndexTuple((2, 2))
        with pytest.raises(UnsupportedVariant):
            laws.record_value_subvector_pdf(Geometric(0.5), (1,), (1,))

    def test_discrete_rejected_by_density_laws(self):
        with pytest.raises(UnsupportedVariant):
            laws.record_value_marginal_pdf(uniform_on(3), 1, 1)
        with pytest.raises(UnsupportedVariant):
            laws.record_value_joint_pdf(uniform_on(3), (1, 2))

    def test_hazard_simplex_examples(self):
        assert laws.hazard_simplex_integral(E1, 1, 0.3, 0.9) == 1
        assert laws.hazard_simplex_integral(E1, 3, 0.0, 2.0) == pytest.approx(2.0)
        assert laws.hazard_simplex_integral(U01, 2, 0.25, 0.5) == pytest.approx(math.log(1.5))
        assert laws.hazard_simplex_integral(U01, 3, None, 0.5) == pytest.approx(math.log(2) ** 2 / 2)
        with pytest.raises(DomainError):
            laws.hazard_simplex_integral(U01, 2, 0.6, 0.5)


class TestDiscrete:
    def test_marginal_examples(self):
        g = Geometric(F(1, 2))
        assert laws.discrete_record_pmf(g, 1, 4).exact == F(1, 16)
        assert laws.discrete_record_pmf(g, 2, 2).exact == F(1, 4)
        assert laws.discrete_record_pmf(uniform_on(3), 2, 3).exact == F(1, 2)
        with pytest.raises(OffSupport):
            laws.discrete_record_pmf(g, 2, 2.5)

    def test_marginal_matches_sum_of_joint(self):
        d = FiniteDiscrete((1, 2, 4, 7), (F(1, 10), F(2, 10), F(3, 10), F(4, 10)))
        atoms = [1, 2, 4, 7]
        for n in (1, 2, 3):
            for y in atoms:
                below = [a for a in atoms if a < y]
                total = sum(
                    (laws.discrete_record_joint_pmf(d, (*c, y)).exact for c in itertools.combinations(below, n - 1)),
                    F(0),
                )
                assert laws.discrete_record_pmf(d, n, y).exact == total

    def test_joint_examples(self):
        assert laws.discrete_record_joint_pmf(Geometric(F(1, 2)), (1, 2)).exact == F(1, 4)
        v = laws.discrete_record_joint_pmf(Geometric(F(1, 2)), (2, 2))
        assert v.value == 0 and not v.support_flag

    @pytest.mark.parametrize("p", [F(1, 4), F(1, 2), F(3, 4)])
    def test_geometric_closed_forms(self, p):
        g, q = Geometric(p), 1 - p
        for n in range(1, 5):
            for ys in itertools.combinations(range(1, 13), n):
                v = laws.discrete_record_joint_pmf(g, ys).exact
                assert v == (p / q) ** (n - 1) * q ** (ys[-1] - 1) * p == (p / q) ** n * q ** ys[-1]

    def test_elementary_symmetric(self):
        assert laws.elementary_symmetric([1, 2, 3], 0) == 1
        assert laws.elementary_symmetric([1, 2, 3], 2) == 11
        assert laws.elementary_symmetric([1, 2, 3], 4) == 0
        with pytest.raises(ValueError):
            laws.elementary_symmetric([1] * 100, 65)

    @given(st.lists(st.fractions(min_value=0, max_value=3, max_denominator=7), max_size=7), st.integers(0, 7))
    def test_elementary_symmetric_brute_force(self, vals, m):
        brute = sum((math.prod(c) for c in itertools.combinations(vals, m)), F(0)) if m <= len(vals) else 0
        assert laws.elementary_symmetric(vals, m) == brute


class TestMaxima:
    def test_joint_max_examples(self):
        assert laws.joint_max_cdf(U01, (0.4,)).value == pytest.approx(0.4)
        assert laws.joint_max_cdf(U01, (0.5, 0.5)).value == pytest.approx(0.25)
        assert laws.joint_max_cdf(U01, (0.9, 0.1)).value == pytest.approx(0.01)

    def test_record_cdf_examples(self):
        v, trunc = laws.record_joint_cdf_truncated(U01, (0.4,), 5)
        assert v.value == pytest.approx(0.4) and trunc == pytest.approx(0, abs=1e-15)
        v, trunc = laws.record_joint_cdf_truncated(U01, (1.0, 0.5), 200)
        target = 1 - 0.5 - 0.5 * math.log(2)
        assert v.value <= target + 1e-12
        assert target - v.value <= trunc

    def test_record_cdf_truncation_decreases(self):
        masses = [laws.record_joint_cdf_truncated(U01, (0.9, 0.8, 0.7), h)[1] for h in (3, 10, 50, 200)]
        assert all(b < a for a, b in zip(masses, masses[1:]))
        assert laws.record_joint_cdf_truncated(U01, (0.5, 0.5), 2)[1] == pytest.approx(0.5)

    def test_record_cdf_matches_brute_force_enumeration(self):
        ys, H = (0.9, 0.6, 0.5), 12
        a = [0.5, 0.5, 0.5]
        brute = 0.0
        for tail in itertools.combinations(range(2, H + 1), 2):
            ell = (1, *tail)
            w = laws.record_times_joint_pmf(tail).value
            brute += w * math.prod(ai ** (l - p) for ai, l, p in zip(a, ell, (0, *ell)))
        assert laws.record_joint_cdf_truncated(U01, ys, H)[0].value == pytest.approx(brute)

    def test_record_cdf_limitation_for_increasing_thresholds(self):
        # summing weights of independent maxima is exact only when every
        # running minimum equals y_n; for (0.3, 0.7) the true value is larger
        v, trunc = laws.record_joint_cdf_truncated(U01, (0.3, 0.7), 2000)
        true = _p_x1_le_a_x2_le_b(0.3, 0.7)
        assert true - v.value > 0.04

    def test_no_further_record(self):
        assert laws.prob_no_further_record(uniform_on(6)).exact == F(1, 6)
        assert laws.prob_no_further_record(E1).value == 0
        assert laws.prob_no_further_record(U01).value == 0
        assert laws.prob_no_further_record(Geometric(0.5)).value == 0


def _p_x1_le_a_x2_le_b(a, b):
    # P(X^(1) <= a, X^(2) <= b) on Uniform(0,1): int_0^a (b - x)/(1 - x) dx
    return a - (1 - b) * math.log(1 / (1 - a))


def test_registry_maps_to_functions():
    assert len(laws.FORMULAS) == 13
    for fid, f in laws.FORMULAS.items():
        assert f.formula_id == fid
        assert callable(f.func)


def test_lawvalue_rejects_nonzero_off_support():
    with pytest.raises(ValueError):
        laws.LawValue(0.3, "x", False)
