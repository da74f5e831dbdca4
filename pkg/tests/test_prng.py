"""The generator is pinned to a fixed algorithm: splitmix64 seeding a
xoshiro256** core.  Golden values below were produced by a separate
transcription of the published reference algorithms (reproduced inline
as the oracle), so any drift in the package implementation fails here.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pontgap.prng import Xoshiro256StarStar, splitmix64

_MASK = (1 << 64) - 1

# published splitmix64 outputs for seed 0
SPLITMIX_SEED0 = [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]

# first outputs of xoshiro256** with splitmix64-expanded seeds (oracle run)
XOSHIRO_SEED0 = [
    0x99EC5F36CB75F2B4,
    0xBF6E1F784956452A,
    0x1A5F849D4933E6E0,
    0x6AA594F1262D2D2C,
    0xBBA5AD4A1F842E59,
]
XOSHIRO_SEED12345 = [
    0xBE6A36374160D49B,
    0x214AAA0637A688C6,
    0xF69D16DE9954D388,
    0x0C60048C4E96E033,
    0x8E2076AEED51C648,
]


def _oracle_splitmix(seed):
    state = seed & _MASK
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        yield z ^ (z >> 31)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK


def _oracle_xoshiro(seed, count):
    s = list(itertools.islice(_oracle_splitmix(seed), 4))
    out = []
    for _ in range(count):
        out.append((_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK)
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
    return out


def test_splitmix64_reference_vectors():
    state = 0
    outputs = []
    for _ in range(3):
        state, value = splitmix64(state)
        outputs.append(value)
    assert outputs == SPLITMIX_SEED0


@pytest.mark.parametrize(
    "seed,golden", [(0, XOSHIRO_SEED0), (12345, XOSHIRO_SEED12345)]
)
def test_xoshiro_golden_outputs(seed, golden):
    rng = Xoshiro256StarStar(seed)
    assert [rng.next_u64() for _ in range(5)] == golden


@given(st.integers(min_value=0, max_value=_MASK))
def test_xoshiro_matches_oracle(seed):
    rng = Xoshiro256StarStar(seed)
    assert [rng.next_u64() for _ in range(40)] == _oracle_xoshiro(seed, 40)


def test_determinism():
    a = Xoshiro256StarStar(99)
    b = Xoshiro256StarStar(99)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


@given(st.integers(min_value=0, max_value=_MASK))
def test_uniform_range(seed):
    rng = Xoshiro256StarStar(seed)
    for _ in range(20):
        u = rng.uniform()
        assert 0.0 <= u < 1.0


def test_uniform_moments():
    rng = Xoshiro256StarStar(7)
    draws = np.array([rng.uniform() for _ in range(20_000)])
    assert abs(draws.mean() - 0.5) < 0.01
    assert abs(draws.var() - 1 / 12) < 0.005


def test_normal_moments():
    rng = Xoshiro256StarStar(11)
    draws = np.array([rng.normal() for _ in range(20_000)])
    assert abs(draws.mean()) < 0.03
    assert abs(draws.std() - 1.0) < 0.03


def test_complex_normal_is_unit_variance():
    rng = Xoshiro256StarStar(13)
    draws = np.array([rng.complex_normal() for _ in range(20_000)])
    assert abs(np.mean(np.abs(draws) ** 2) - 1.0) < 0.05
    assert abs(draws.mean()) < 0.05


def test_sign_takes_both_values():
    rng = Xoshiro256StarStar(3)
    draws = [rng.sign() for _ in range(200)]
    assert set(draws) == {-1.0, 1.0}
    assert abs(sum(draws)) < 80


def test_substreams_differ_and_are_deterministic():
    base = 5
    first = Xoshiro256StarStar.substream(base, 1)
    second = Xoshiro256StarStar.substream(base, 2)
    again = Xoshiro256StarStar.substream(base, 1)
    seq1 = [first.next_u64() for _ in range(10)]
    seq2 = [second.next_u64() for _ in range(10)]
    assert seq1 != seq2
    assert seq1 == [again.next_u64() for _ in range(10)]
