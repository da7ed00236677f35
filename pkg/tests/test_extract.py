import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recordlaws.errors import DimensionMismatch, EmptyInput, InvalidElement, TooFewRecords
from recordlaws.extract import Extractor, RecordKind, extract_all, feed, inter_record_gaps
from recordlaws.order import OrderedSpace, beats

SU, WU, SL, WL = RecordKind.STRONG_UPPER, RecordKind.WEAK_UPPER, RecordKind.STRONG_LOWER, RecordKind.WEAK_LOWER


def pairs(rs):
    return [(e.time_index, e.value) for e in rs.events]


def test_strong_upper_example():
    assert pairs(extract_all([3, 1, 4, 1, 5], SU)) == [(1, 3), (3, 4), (5, 5)]


def test_weak_upper_repeats():
    assert extract_all([2, 2, 2], WU).times == [1, 2, 3]


def test_vector_skips_incomparable():
    rs = extract_all([(1, 1), (2, 0), (2, 2)], SU, OrderedSpace(2))
    assert rs.times == [1, 3]


def test_strong_lower_example():
    rs = extract_all([3, 1, 4, 0], SL)
    assert rs.times == [1, 2, 4] and rs.values == [3, 1, 0]


def test_constant_and_increasing_streams():
    assert pairs(extract_all([7, 7, 7], SU)) == [(1, 7)]
    rs = extract_all(range(1, 9), SU)
    assert rs.count == 8 and rs.deltas == [1] * 7


def test_gaps():
    assert inter_record_gaps(extract_all([3, 1, 4, 1, 5], SU)) == [2, 2]
    assert inter_record_gaps(extract_all([1, 2], SU)) == [1]
    with pytest.raises(TooFewRecords):
        inter_record_gaps(extract_all([1], SU))


def test_errors():
    with pytest.raises(EmptyInput):
        extract_all([], SU)
    with pytest.raises(InvalidElement):
        extract_all([1.0, math.nan], SU)
    with pytest.raises(DimensionMismatch):
        extract_all([(1, 2), (1, 2, 3)], SU, OrderedSpace(2))


def test_clock_and_incumbent():
    ex = Extractor(SU)
    assert ex.incumbent is None
    assert feed(ex, 5).ordinal == 1
    assert feed(ex, 4) is None
    assert ex.clock == 2 and ex.incumbent == 5
    rs = ex.result()
    assert rs.observations_consumed == 2


def test_json_shape():
    d = extract_all([3, 1, 4], SU).to_dict()
    assert d == {"kind": "strong-upper", "events": [{"n": 1, "t": 1, "value": 3}, {"n": 2, "t": 3, "value": 4}],
                 "deltas": [2], "count": 2}


reals = st.lists(st.one_of(st.integers(-5, 5), st.floats(-1e3, 1e3, allow_nan=False)), min_size=1, max_size=40)
positives = st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=40)
kinds = st.sampled_from(list(RecordKind))


@given(reals, kinds)
def test_sequence_invariants(xs, kind):
    rs = extract_all(xs, kind)
    assert rs.events[0].time_index == 1 and rs.events[0].ordinal == 1
    assert all(b > a for a, b in zip(rs.times, rs.times[1:]))
    assert all(d >= 1 for d in rs.deltas)
    assert [e.ordinal for e in rs.events] == list(range(1, rs.count + 1))
    for a, b in zip(rs.values, rs.values[1:]):
        assert beats(OrderedSpace(), kind, b, a)


@given(reals, kinds)
def test_feed_equals_fold(xs, kind):
    ex = Extractor(kind)
    for x in xs:
        ex.feed(x)
    assert ex.result() == extract_all(xs, kind)


@given(reals, kinds)
def test_one_dimensional_vectors_match_reals(xs, kind):
    a = extract_all(xs, kind)
    b = extract_all([(x,) for x in xs], kind, OrderedSpace(1))
    assert a.times == b.times and [(v,) for v in a.values] == b.values


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=40), kinds,
       st.sampled_from(["exp", "affine", "cube"]))
def test_rescaling(xs, kind, name):
    h = {"exp": math.exp, "affine": lambda x: 2.5 * x + 1.0, "cube": lambda x: x**3}[name]
    hx = [h(x) for x in xs]
    # floating point can merge distinct values; only strictly monotone samples qualify
    if len(set(hx)) != len(set(xs)):
        return
    a, b = extract_all(xs, kind), extract_all(hx, kind)
    assert a.times == b.times
    assert [h(v) for v in a.values] == b.values


@given(reals, st.sampled_from([SL, WL]))
def test_negation_duality(xs, kind):
    a = extract_all(xs, kind)
    b = extract_all([-x for x in xs], kind.dual())
    assert a.times == b.times and [-v for v in a.values] == b.values


@given(positives, st.sampled_from([SL, WL]))
def test_reciprocal_duality(xs, kind):
    inv = [1.0 / x for x in xs]
    if len(set(inv)) != len(set(xs)):
        return
    assert extract_all(xs, kind).times == extract_all(inv, kind.dual()).times


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=30), kinds)
def test_vector_records_form_chain(xs, kind):
    space = OrderedSpace(2)
    rs = extract_all(xs, kind, space)
    for a, b in zip(rs.values, rs.values[1:]):
        assert beats(space, kind, b, a)
