"""Deterministic random number streams for Monte Carlo runs.

Generator identity (pinned):

* Variate generation: PCG-XSH-RR 64/32 ("pcg32", O'Neill 2014). 64-bit LCG
  state, 32-bit output via xorshift-high + random rotation.
* Seed/stream derivation: SplitMix64 finalizer chain over labels, with
  strings absorbed through FNV-1a 64.

Both are fixed-width integer recurrences, so a given seed produces the same
sequence on every platform. The stream state lives in a two-element uint64
array so that numba kernels can advance it in place; the pure-Python methods
call the same jitted routines and therefore consume the stream identically.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_MASK64 = (1 << 64) - 1
_PCG_MULT = np.uint64(6364136223846793005)
_SM64_GAMMA = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


@njit(inline="always")
def _pcg32_next(state):
    """Advance a pcg32 stream. state is uint64[2] = (lcg state, odd increment)."""
    old = state[0]
    state[0] = old * _PCG_MULT + state[1]
    xorshifted = np.uint32(((old >> np.uint64(18)) ^ old) >> np.uint64(27))
    rot = np.uint32(old >> np.uint64(59))
    return np.uint32(
        (xorshifted >> rot) | (xorshifted << ((np.uint32(32) - rot) & np.uint32(31)))
    )


@njit(inline="always")
def _pcg32_uniform(state):
    """Uniform float64 in [0, 1) with 32-bit resolution."""
    return np.float64(_pcg32_next(state)) * (2.0 ** -32)


@njit(inline="always")
def _pcg32_below(state, bound):
    """Unbiased integer in [0, bound) via rejection (bound: uint32 > 0)."""
    threshold = np.uint32(np.uint64(4294967296) % np.uint64(bound))
    while True:
        r = _pcg32_next(state)
        if r >= threshold:
            return r % np.uint32(bound)


def _sm64_mix(z: int) -> int:
    """SplitMix64 finalizer (Steele/Lea/Flood 2014)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns (output, next state)."""
    state = (state + _SM64_GAMMA) & _MASK64
    return _sm64_mix(state), state


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


def derive_seed(base_seed: int, *parts: int | str) -> int:
    """Collapse a base seed plus stream labels into one 64-bit seed.

    Labels may be integers (e.g. temperature index, replicate index) or
    strings (e.g. a boundary-condition name); strings are absorbed via
    FNV-1a 64. Used to give every generated image its own independent,
    reproducible stream.
    """
    h = base_seed & _MASK64
    for part in parts:
        v = fnv1a64(part.encode("utf-8")) if isinstance(part, str) else part & _MASK64
        h = _sm64_mix((h + _SM64_GAMMA) ^ v)
    return _sm64_mix(h + _SM64_GAMMA)


class RngStream:
    """A seedable pcg32 stream.

    Identical (seed, stream) pairs give bit-identical sequences. The raw
    state array is handed to the jitted sweep kernels, which advance it in
    place, so interleaving Python-side draws with kernel calls is well
    defined and reproducible.
    """

    def __init__(self, seed: int, stream: int = 0):
        state = 0
        inc = (((stream & _MASK64) << 1) | 1) & _MASK64
        state = (state * 6364136223846793005 + inc) & _MASK64
        state = (state + (seed & _MASK64)) & _MASK64
        state = (state * 6364136223846793005 + inc) & _MASK64
        self._state = np.array([state, inc], dtype=np.uint64)

    @property
    def state(self) -> np.ndarray:
        """Raw (lcg state, increment) pair; mutated in place by kernels."""
        return self._state

    def next_u32(self) -> int:
        return int(_pcg32_next(self._state))

    def uniform(self) -> float:
        """Uniform float in [0, 1)."""
        return float(_pcg32_uniform(self._state))

    def integer_below(self, bound: int) -> int:
        """Unbiased uniform integer in [0, bound)."""
        if not 0 < bound <= 0xFFFFFFFF:
            raise ValueError("bound must be in [1, 2**32 - 1]")
        return int(_pcg32_below(self._state, np.uint32(bound)))
