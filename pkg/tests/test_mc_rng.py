import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from recordlaws.mc import rng


def test_range_and_shape():
    keys = rng.trial_keys(3, np.arange(50))
    u = rng.uniforms(keys, 0, 5000)
    assert u.shape == (50, 5000)
    assert np.all((u > 0) & (u < 1))


def test_keys_depend_on_seed_stream_and_trial():
    a = rng.trial_keys(1, np.arange(100))
    assert len(np.unique(a)) == 100
    assert not np.array_equal(a, rng.trial_keys(2, np.arange(100)))
    assert not np.array_equal(a, rng.trial_keys(1, np.arange(100), rng.STREAM_RENYI))
    np.testing.assert_array_equal(a, rng.trial_keys(1, np.arange(100)))


def test_keys_are_per_trial():
    full = rng.trial_keys(9, np.arange(20))
    np.testing.assert_array_equal(full[7:12], rng.trial_keys(9, np.arange(7, 12)))


@given(st.integers(0, 6000), st.integers(1, 3000), st.integers(1, 700))
def test_chunking_is_invisible(start, count, cut):
    key = rng.trial_keys(5, [0])[0]
    whole = rng.trial_uniforms(key, start, count)
    cut = min(cut, count)
    pieces = np.concatenate([rng.trial_uniforms(key, start, cut), rng.trial_uniforms(key, start + cut, count - cut)])
    np.testing.assert_array_equal(whole, pieces)


def test_batch_rows_match_single_trials():
    keys = rng.trial_keys(11, np.arange(4))
    u = rng.uniforms(keys, rng.HEAD - 10, 30)
    for row, key in zip(u, keys):
        np.testing.assert_array_equal(row, rng.trial_uniforms(key, rng.HEAD - 10, 30))


@pytest.mark.parametrize("start", [0, rng.HEAD + 100])
def test_uniform_moments(start):
    u = rng.uniforms(rng.trial_keys(4, np.arange(200)), start, 1000).ravel()
    assert abs(u.mean() - 0.5) < 4 * (1 / 12) ** 0.5 / len(u) ** 0.5
    lag = np.corrcoef(u[:-1], u[1:])[0, 1]
    assert abs(lag) * len(u) ** 0.5 < 4
