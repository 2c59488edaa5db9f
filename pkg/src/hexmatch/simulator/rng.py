"""Counter-based random streams.

A draw is a pure function of ``(seed, shot, stream, counter)``, so shots can
be simulated in any order or on any number of threads with identical results.
Each shot owns two streams: one for random measurement outcomes and one for
noise sampling, which keeps measurement draws aligned whether or not noise
instructions are present.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0

MEASURE_STREAM = 0
NOISE_STREAM = 1


@njit(cache=True)
def mix64(z):
    # splitmix64 finaliser
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def stream_key(seed, shot, stream):
    k = mix64(np.uint64(seed) ^ (np.uint64(stream + 1) * _GOLDEN))
    return mix64(k + np.uint64(shot) * _GOLDEN)


@njit(cache=True)
def uniform(key, counter):
    """Uniform double in [0, 1) for draw number ``counter`` of stream ``key``."""
    v = mix64(key + (np.uint64(counter) + _ONE) * _GOLDEN)
    return np.float64(v >> _S11) * _INV53


def seed64(seed: int) -> int:
    """Map any Python int onto the unsigned 64-bit seed space."""
    return int(seed) & 0xFFFFFFFFFFFFFFFF
