"""Counter-based uniforms keyed by (seed, stream, trial, draw index).

Every uniform is a pure function of its coordinates, so a trial produces
the same numbers whichever worker runs it and in whatever block sizes its
draws are requested.

The first ``HEAD`` draws of a trial come from the SplitMix64 finalizer
applied to ``key + index * golden``, which vectorizes across trials. Later
draws come from a Philox counter stream keyed by the same trial key, which
is several times faster per draw for the few long-running trials that need
them.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "mix64",
    "trial_keys",
    "uniforms",
    "trial_uniforms",
    "HEAD",
    "STREAM_OBSERVATIONS",
    "STREAM_RENYI",
    "STREAM_AUX",
]

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_TWO_M53 = 2.0**-53
_MASK = 2**64 - 1

HEAD = 4096

STREAM_OBSERVATIONS = 0
STREAM_RENYI = 1
STREAM_AUX = 2


def mix64(z) -> np.ndarray:
    """SplitMix64 finalizer (wrapping uint64 arithmetic); returns a new array."""
    z = np.array(z, dtype=np.uint64, copy=True)
    t = np.empty_like(z)
    with np.errstate(over="ignore"):
        np.right_shift(z, _S30, out=t)
        z ^= t
        z *= _M1
        np.right_shift(z, _S27, out=t)
        z ^= t
        z *= _M2
        np.right_shift(z, _S31, out=t)
        z ^= t
    return z


def trial_keys(seed: int, trials, stream: int = STREAM_OBSERVATIONS) -> np.ndarray:
    """One 64-bit key per trial index."""
    base = (int(seed) & _MASK) ^ ((0x632BE59BD9B4E019 * (stream + 1)) & _MASK)
    seed_key = mix64(np.array([base], dtype=np.uint64))[0]
    t = np.asarray(trials, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(seed_key ^ mix64(t * GOLDEN + np.uint64(stream + 1)))


def _to_unit(z: np.ndarray) -> np.ndarray:
    z >>= _S11
    u = z.astype(np.float64)
    u += 0.5
    u *= _TWO_M53
    return u


def _head(keys: np.ndarray, start: int, count: int) -> np.ndarray:
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        idx *= GOLDEN
        z = np.add(keys[:, None], idx[None, :])
    return _to_unit(mix64(z))


def _tail(key: np.uint64, offset: int, count: int) -> np.ndarray:
    """``count`` draws starting ``offset`` places into the trial's Philox stream."""
    block, skip = divmod(offset, 4)
    bg = np.random.Philox(counter=[block, 0, 0, 0], key=[int(key), 0x5EED])
    raw = bg.random_raw(skip + count)[skip:]
    return _to_unit(raw)


def uniforms(keys: np.ndarray, start: int, count: int) -> np.ndarray:
    """Uniforms in (0, 1) for draw indices ``start .. start+count-1`` of each key.

    Returns an array of shape ``(len(keys), count)``.
    """
    keys = np.asarray(keys, dtype=np.uint64)
    if start + count <= HEAD:
        return _head(keys, start, count)
    out = np.empty((len(keys), count))
    split = max(0, min(count, HEAD - start))
    if split:
        out[:, :split] = _head(keys, start, split)
    for row, key in enumerate(keys):
        out[row, split:] = _tail(key, start + split - HEAD, count - split)
    return out


def trial_uniforms(key, start: int, count: int) -> np.ndarray:
    """Draws ``start .. start+count-1`` of a single trial as a 1-d array."""
    return uniforms(np.array([key], dtype=np.uint64), start, count)[0]
