"""Reproducible random numbers built on the SplitMix64 generator.

SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
generators", OOPSLA 2014) is used because its output sequence is a pure
function of ``seed + k * GAMMA`` for the k-th draw, which makes it both
counter-based and trivially splittable.  Every stream this package uses is
derived from a 64-bit seed through :meth:`SplitMix64.spawn_key`, so results
are reproducible bit-for-bit regardless of execution order or thread count,
and the scheme can be re-implemented in any language from this file alone.

Derivation rules used by the rest of the package:

* profile sampling: ranking ``r`` draws from ``stream.spawn_key(r)``
* experiment runners: trial ``t`` uses ``master.spawn_key(t)``
* random restriction inside the deletion experiment: key ``n + m`` of the
  trial stream (ranking keys occupy ``0 .. n-1``)
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """Finalizing mixer of SplitMix64 (Stafford's MurmurHash3 variant 13)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit stream; the k-th output is ``mix64(seed + k*GAMMA)``."""

    __slots__ = ("seed", "_counter")

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._counter = 0

    def next_uint64(self) -> int:
        self._counter += 1
        return mix64((self.seed + self._counter * _GAMMA) & _MASK64)

    def next_float(self) -> float:
        """Uniform draw in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53

    def next_below(self, n: int) -> int:
        """Unbiased uniform integer in [0, n), by rejection on the top range."""
        if n <= 0:
            raise ValueError("n must be positive")
        threshold = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            u = self.next_uint64()
            if u < threshold:
                return u % n

    def spawn_key(self, key: int) -> "SplitMix64":
        """Child stream for a non-negative key; independent of draw position."""
        if key < 0:
            raise ValueError("spawn key must be non-negative")
        return SplitMix64(mix64((self.seed + (key + 1) * _GAMMA) & _MASK64))

    def __repr__(self) -> str:
        return f"SplitMix64(seed={self.seed:#018x})"


def _mix64_array(z: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2^64, matching the scalar path exactly
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def uniform_block(seed: int, count: int) -> np.ndarray:
    """Outputs 1..count of ``SplitMix64(seed).next_float()``, vectorized."""
    k = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed) + k * np.uint64(_GAMMA)
    return (_mix64_array(z) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def spawn_seeds(seed: int, count: int) -> np.ndarray:
    """Seeds of child streams ``spawn_key(0) .. spawn_key(count-1)``, vectorized."""
    k = np.arange(1, count + 1, dtype=np.uint64)
    return _mix64_array(np.uint64(seed) + k * np.uint64(_GAMMA))
