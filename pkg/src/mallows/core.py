"""Rankings, profiles, the swap distance, and profile restriction.

Alternatives are dense integers ``0 .. m-1`` internally; display names and
external ids live on the :class:`Profile`.  Positions are 1-based in every
exposed contract.  All types are immutable after construction and all
operations are pure functions, so everything here is safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from operator import index
from typing import Iterable, Sequence

from .rng import SplitMix64


@dataclass(frozen=True)
class Ranking:
    """A strict total order over alternatives 0..m-1, best first.

    ``order[k]`` is the alternative at (1-based) position ``k + 1``.
    """

    order: tuple[int, ...]
    _pos: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(index(a) for a in self.order)  # accepts numpy integers
        object.__setattr__(self, "order", order)
        m = len(order)
        pos = [0] * m
        for idx, alt in enumerate(order):
            if not 0 <= alt < m:
                raise ValueError(f"alternative {alt!r} outside 0..{m - 1}")
            if pos[alt]:
                raise ValueError(f"alternative {alt} appears twice")
            pos[alt] = idx + 1
        object.__setattr__(self, "_pos", tuple(pos))

    @property
    def m(self) -> int:
        return len(self.order)

    def position(self, alt: int) -> int:
        """1-based position of ``alt``; position 1 is best."""
        return self._pos[alt]

    def restrict(self, keep: Sequence[int]) -> "Ranking":
        """Restriction to ``keep`` with alternatives re-densified in id order.

        ``keep`` must be sorted ascending without duplicates.  The relative
        order of the kept alternatives is preserved; the k-th smallest kept id
        becomes the new id ``k``.
        """
        new_id = {alt: k for k, alt in enumerate(keep)}
        return Ranking(tuple(new_id[a] for a in self.order if a in new_id))


def identity_ranking(m: int) -> Ranking:
    """The lexicographic central order: alternative 0 first, then 1, and so on."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return Ranking(tuple(range(m)))


@dataclass(frozen=True)
class Profile:
    """An ordered collection of rankings over a shared alternative set.

    ``ids``/``names`` carry external labels for the internal alternatives
    0..m-1 (defaults: id ``k + 1`` with name ``"c<k+1>"``).
    """

    rankings: tuple[Ranking, ...]
    ids: tuple[int, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.rankings:
            raise ValueError("profile needs at least one ranking")
        m = self.rankings[0].m
        for v in self.rankings:
            if v.m != m:
                raise ValueError("all rankings must cover the same alternatives")
        if not self.ids:
            object.__setattr__(self, "ids", tuple(range(1, m + 1)))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"c{i}" for i in self.ids))
        if len(self.ids) != m or len(self.names) != m:
            raise ValueError("ids/names must have one entry per alternative")
        if len(set(self.ids)) != m:
            raise ValueError("external ids must be unique")

    @property
    def m(self) -> int:
        return self.rankings[0].m

    @property
    def n(self) -> int:
        return len(self.rankings)


def kendall_tau(u: Ranking, v: Ranking) -> int:
    """Swap distance: the number of alternative pairs ordered oppositely.

    Symmetric, ranges over ``0 .. m(m-1)/2``.  Computed as the inversion
    count of one ranking expressed in the other's positions, via an
    O(m log m) merge count.

    Raises
    ------
    ValueError
        If the rankings are over different alternative sets.
    """
    if u.m != v.m:
        raise ValueError("rankings cover different alternative sets")
    seq = [v.position(alt) for alt in u.order]
    return _count_inversions(seq)


def _count_inversions(seq: list[int]) -> int:
    n = len(seq)
    if n < 2:
        return 0
    work = list(seq)
    buf = [0] * n
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if work[i] <= work[j]:
                    buf[k] = work[i]
                    i += 1
                else:
                    buf[k] = work[j]
                    inversions += mid - i
                    j += 1
                k += 1
            buf[k:hi] = work[i:mid] if i < mid else work[j:hi]
            work[lo:hi] = buf[lo:hi]
        width *= 2
    return inversions


def restrict_profile(p: Profile, keep: Iterable[int]) -> Profile:
    """Drop every alternative outside ``keep``, preserving relative orders.

    ``keep`` holds internal ids.  The result has ``m' = len(keep)``
    alternatives, re-densified in ascending old-id order so that restricting
    an identity profile yields an identity profile.
    """
    keep_sorted = sorted(set(keep))
    if not keep_sorted:
        raise ValueError("keep set must be non-empty")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= p.m:
        raise ValueError(f"keep set contains ids outside 0..{p.m - 1}")
    return Profile(
        rankings=tuple(v.restrict(keep_sorted) for v in p.rankings),
        ids=tuple(p.ids[a] for a in keep_sorted),
        names=tuple(p.names[a] for a in keep_sorted),
    )


def random_restriction(p: Profile, m_target: int, rng: SplitMix64) -> Profile:
    """Restrict to a uniformly random subset of ``m_target`` alternatives.

    The subset is drawn once and applied to every ranking.  Deterministic
    given the generator state (partial Fisher-Yates over the id array).
    """
    if not 1 <= m_target <= p.m:
        raise ValueError(f"m_target must be in 1..{p.m}, got {m_target}")
    pool = list(range(p.m))
    for k in range(m_target):
        j = k + rng.next_below(p.m - k)
        pool[k], pool[j] = pool[j], pool[k]
    return restrict_profile(p, pool[:m_target])
