"""Pinned-generator identity and stream-derivation tests."""

import numpy as np
import pytest

from isinglab.rng import RngStream, derive_seed, fnv1a64, splitmix64


def test_pcg32_reference_vectors():
    # Published pcg32 demo output for srandom(42, 54).
    rng = RngStream(42, stream=54)
    got = [rng.next_u32() for _ in range(6)]
    assert got == [0xA15C02B7, 0x7B47F409, 0xBA1D3330, 0x83D2F293, 0xBFA4784B, 0xCBED606E]


def test_splitmix64_reference_vectors():
    # Reference sequence for initial state 0.
    state = 0
    got = []
    for _ in range(3):
        v, state = splitmix64(state)
        got.append(v)
    assert got == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_identical_seed_identical_sequence():
    a = RngStream(987654321)
    b = RngStream(987654321)
    assert [a.next_u32() for _ in range(100)] == [b.next_u32() for _ in range(100)]


def test_different_seed_or_stream_differ():
    base = [RngStream(1).next_u32() for _ in range(8)]
    assert [RngStream(2).next_u32() for _ in range(8)] != base
    assert [RngStream(1, stream=1).next_u32() for _ in range(8)] != base


def test_uniform_range_and_mean():
    rng = RngStream(5)
    draws = np.array([rng.uniform() for _ in range(20000)])
    assert np.all((draws >= 0.0) & (draws < 1.0))
    assert abs(draws.mean() - 0.5) < 0.01


def test_integer_below_bounds_and_coverage():
    rng = RngStream(11)
    draws = [rng.integer_below(7) for _ in range(5000)]
    assert set(draws) == set(range(7))
    with pytest.raises(ValueError):
        rng.integer_below(0)


def test_fnv1a64_known_value():
    # FNV-1a 64 of empty input is the offset basis.
    assert fnv1a64(b"") == 0xCBF29CE484222325
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C


def test_derive_seed_properties():
    s1 = derive_seed(42, "periodic_ferro", 250, 0)
    assert s1 == derive_seed(42, "periodic_ferro", 250, 0)
    assert s1 != derive_seed(42, "periodic_ferro", 250, 1)
    assert s1 != derive_seed(42, "periodic_antiferro", 250, 0)
    assert s1 != derive_seed(43, "periodic_ferro", 250, 0)
    # order matters
    assert derive_seed(0, 1, 2) != derive_seed(0, 2, 1)
    assert 0 <= s1 < 2**64
