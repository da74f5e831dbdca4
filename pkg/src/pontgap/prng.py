"""Deterministic pseudo-random streams for reproducible ensembles.

The generator is xoshiro256** seeded through splitmix64, implemented
directly so that every ensemble in this package is reproducible from a
64-bit seed alone, independent of the host library's RNG defaults.
Both algorithms are pinned by reference output vectors in the tests.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once; return ``(new_state, output)``."""
    state = (state + _GOLDEN) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, (z ^ (z >> 31)) & _MASK


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256StarStar:
    """xoshiro256** stream with splitmix64 state expansion.

    Parameters
    ----------
    seed : int
        Any Python integer; reduced modulo 2**64.
    """

    __slots__ = ("_s", "_spare_normal")

    def __init__(self, seed: int):
        state = seed & _MASK
        s = []
        for _ in range(4):
            state, out = splitmix64(state)
            s.append(out)
        if not any(s):  # all-zero state is a fixed point of xoshiro
            s[0] = _GOLDEN
        self._s = s
        self._spare_normal = None

    @classmethod
    def substream(cls, seed: int, tag: int) -> "Xoshiro256StarStar":
        """Derive an independent stream for purpose ``tag`` under ``seed``."""
        _, mixed = splitmix64((seed + tag * _GOLDEN) & _MASK)
        return cls(mixed)

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal via Box-Muller, one spare cached."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
            return z
        # u1 in (0, 1] so the logarithm is finite
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare_normal = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def complex_normal(self) -> complex:
        """Standard complex normal (unit variance overall)."""
        return complex(self.normal(), self.normal()) / math.sqrt(2.0)

    def sign(self) -> int:
        """Uniform on {-1, +1}."""
        return 1 if (self.next_u64() >> 63) == 0 else -1
