"""Sampling rankings and profiles through sequential insertion.

A ranking is built by inserting alternative 0, then 1, ... up to m-1; at
step k the new (so far weakest) alternative lands at position j of the
current k-slot prefix with probability ``phi^(k-j) / (1 + phi + ... +
phi^(k-1))``.  The number of alternatives the insertion jumps over,
``i = k - j``, is exactly the number of new inversions, so the per-step
inversion counts form a compact code for the sampled ranking.

Randomness comes from :class:`~mallows.rng.SplitMix64` substreams: ranking
``r`` of a profile uses child stream ``spawn_key(r)`` of the profile stream
and consumes one uniform per insertion step.  Results are therefore
identical however the work is scheduled, and the first ``m`` steps of a
ranking coincide with the first ``m`` steps of the same ranking sampled at a
larger alternative count under the same seed.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .analytic import _check_m, _check_phi
from .core import Profile, Ranking
from .normalize import phi_from_norm_phi
from .rng import _GAMMA, SplitMix64, _mix64_array, spawn_seeds

PMF_CHECK_MAX_M = 5


@dataclass(frozen=True)
class DispersionSpec:
    """Tagged dispersion value: classic phi or the normalized variant."""

    kind: Literal["classic", "normalized"]
    value: float

    def __post_init__(self):
        if self.kind not in ("classic", "normalized"):
            raise ValueError(f"kind must be 'classic' or 'normalized', got {self.kind!r}")
        _check_phi(self.value)

    def resolve(self, m: int) -> float:
        """The classic dispersion to sample with, for ``m`` alternatives."""
        if self.kind == "classic":
            return self.value
        return phi_from_norm_phi(self.value, m)


@dataclass(frozen=True)
class SamplerConfig:
    dispersion: DispersionSpec
    m: int
    n: int
    seed: int
    central: Optional[Ranking] = None

    def __post_init__(self):
        _check_m(self.m)
        if self.n < 1:
            raise ValueError(f"need at least one ranking, got n={self.n}")
        if self.central is not None and self.central.m != self.m:
            raise ValueError("central order does not cover m alternatives")


class InsertionTables:
    """Cumulative insertion distributions for every step up to m; reusable
    across rankings for a fixed dispersion."""

    def __init__(self, phi: float, m: int):
        self.phi = _check_phi(phi)
        self.m = _check_m(m)
        pows = np.power(phi, np.arange(m, dtype=np.float64))
        sums = np.cumsum(pows)
        rows = []
        for k in range(1, m + 1):
            cum = sums[:k] / sums[k - 1]
            cum[-1] = 1.0
            rows.append(cum)
        self._rows = rows

    def draw(self, k: int, u: float) -> int:
        """Inversions created at step k for a uniform u in [0, 1)."""
        return bisect_right(self._rows[k - 1], u)

    def draw_block(self, u: np.ndarray) -> np.ndarray:
        """Per-step inversions for a (count, m) matrix of uniforms."""
        codes = np.empty(u.shape, dtype=np.int64)
        for k in range(1, self.m + 1):
            codes[:, k - 1] = np.searchsorted(self._rows[k - 1], u[:, k - 1], side="right")
        return codes


def _ranking_from_code(code, central: Optional[Ranking] = None) -> Ranking:
    order: list[int] = []
    for k, inv in enumerate(code, start=1):
        order.insert(k - 1 - inv, k - 1)
    if central is not None:
        order = [central.order[a] for a in order]
    return Ranking(tuple(order))


def rim_sample(
    phi: float,
    m: int,
    rng: SplitMix64,
    tables: Optional[InsertionTables] = None,
    central: Optional[Ranking] = None,
) -> Ranking:
    """One ranking by sequential insertion; consumes exactly m uniforms."""
    if tables is None:
        tables = InsertionTables(phi, m)
    code = [tables.draw(k, rng.next_float()) for k in range(1, m + 1)]
    return _ranking_from_code(code, central)


def _insertion_codes(tables: InsertionTables, count: int, stream_seed: int) -> np.ndarray:
    """Inversion codes of ``count`` rankings drawn from substreams 0..count-1."""
    seeds = spawn_seeds(stream_seed, count)
    k = np.arange(1, tables.m + 1, dtype=np.uint64)
    z = _mix64_array(seeds[:, None] + k[None, :] * np.uint64(_GAMMA))
    u = (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
    return tables.draw_block(u)


def sample_profile(cfg: SamplerConfig) -> Profile:
    """A profile of n independent rankings, reproducible from the seed alone.

    For the normalized variant the dispersion is converted once per profile.
    """
    phi = cfg.dispersion.resolve(cfg.m)
    tables = InsertionTables(phi, cfg.m)
    codes = _insertion_codes(tables, cfg.n, cfg.seed)
    rankings = tuple(_ranking_from_code(codes[r], cfg.central) for r in range(cfg.n))
    return Profile(rankings=rankings)


def swap_distances_to_central(cfg: SamplerConfig) -> np.ndarray:
    """Swap distance to the central order for each of n sampled rankings.

    Uses the identity that the per-step insertion inversions sum to the swap
    distance, so no rankings need to be materialized.
    """
    phi = cfg.dispersion.resolve(cfg.m)
    tables = InsertionTables(phi, cfg.m)
    return _insertion_codes(tables, cfg.n, cfg.seed).sum(axis=1)


def sample_pmf_check(phi: float, m: int, samples: int, seed: int) -> dict[Ranking, float]:
    """Empirical ranking frequencies for validating the sampler.

    Only for m <= 5 (the table has m! entries).  The code of each sample is
    folded into a mixed-radix index and counted; the expected deviation from
    the exact pmf is binomial, about ``sqrt(p (1-p) / samples)`` per ranking.
    """
    if m > PMF_CHECK_MAX_M:
        raise ValueError(f"pmf check is capped at m={PMF_CHECK_MAX_M}, got {m}")
    _check_m(m)
    if samples < 1:
        raise ValueError("need at least one sample")
    tables = InsertionTables(phi, m)
    codes = _insertion_codes(tables, samples, seed)
    idx = np.zeros(samples, dtype=np.int64)
    for k in range(2, m + 1):
        idx = idx * k + codes[:, k - 1]
    counts = np.bincount(idx, minlength=math.factorial(m))
    freqs: dict[Ranking, float] = {}
    for flat in range(math.factorial(m)):
        digits = []
        rem = flat
        for k in range(m, 1, -1):
            rem, d = divmod(rem, k)
            digits.append(d)
        code = [0] + digits[::-1]
        freqs[_ranking_from_code(code)] = counts[flat] / samples
    return freqs
