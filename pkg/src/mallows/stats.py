"""Profile-level aggregate statistics: winners, frequency matrices, and the
positionwise distance from the identity matrix.

The positionwise distance models a profile as its position-by-alternative
frequency matrix and measures how far the columns are from unit columns: the
minimum over all column-to-position bijections of the summed 1-D earth
mover's distances, normalized by the distance between the identity and the
uniform matrix, ``(m^2 - 1) / 3``.  A unanimous profile scores 0; a profile
whose frequency matrix is exactly uniform scores 1.  Values are reported
uncapped: nothing forbids a pathological profile from exceeding 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Profile


@dataclass(frozen=True)
class WinnerReport:
    plurality_winner: int
    plurality_score: int
    borda_winner: int
    condorcet_winner: Optional[int]


@dataclass(frozen=True)
class GroupStatistics:
    """Across-profile averages of four plurality-winner properties."""

    plurality_score_share: float        # winner's plurality score / n
    winner_position_share: float        # (winner's average position - 1) / (m - 1)
    plurality_is_borda: float           # fraction of profiles where they coincide
    plurality_is_condorcet: float       # absent Condorcet winner counts as no match


def plurality(p: Profile) -> tuple[int, np.ndarray]:
    """Winner and per-alternative counts of first places; ties break toward
    the smallest alternative id."""
    scores = np.zeros(p.m, dtype=np.int64)
    for v in p.rankings:
        scores[v.order[0]] += 1
    return int(np.argmax(scores)), scores


def borda(p: Profile) -> tuple[int, np.ndarray]:
    """Winner and scores where position i earns m - i points; smallest-id ties."""
    scores = np.zeros(p.m, dtype=np.int64)
    weights = np.arange(p.m - 1, -1, -1, dtype=np.int64)
    for v in p.rankings:
        scores[np.fromiter(v.order, dtype=np.int64, count=p.m)] += weights
    return int(np.argmax(scores)), scores


def pairwise_wins(p: Profile) -> np.ndarray:
    """Matrix whose (a, b) entry counts rankings placing a before b."""
    wins = np.zeros((p.m, p.m), dtype=np.int64)
    for v in p.rankings:
        pos = np.empty(p.m, dtype=np.int64)
        pos[np.fromiter(v.order, dtype=np.int64, count=p.m)] = np.arange(p.m)
        wins += pos[:, None] < pos[None, :]
    return wins


def condorcet(p: Profile) -> Optional[int]:
    """The alternative beating every other by strict majority, if one exists."""
    wins = pairwise_wins(p)
    need = p.n / 2.0
    for c in range(p.m):
        row = np.delete(wins[c], c)
        if np.all(row > need):
            return c
    return None


def winner_report(p: Profile) -> WinnerReport:
    pw, pscores = plurality(p)
    bw, _ = borda(p)
    return WinnerReport(
        plurality_winner=pw,
        plurality_score=int(pscores[pw]),
        borda_winner=bw,
        condorcet_winner=condorcet(p),
    )


def frequency_matrix(p: Profile) -> np.ndarray:
    """Doubly stochastic m x m matrix; entry (i, c) is the fraction of
    rankings placing alternative c at position i + 1."""
    counts = np.zeros((p.m, p.m), dtype=np.float64)
    rows = np.arange(p.m)
    for v in p.rankings:
        counts[rows, np.fromiter(v.order, dtype=np.int64, count=p.m)] += 1.0
    return counts / p.n


def emd_1d(a: Sequence[float], b: Sequence[float]) -> float:
    """Earth mover's distance between two distributions over positions 1..m
    with ground distance |i - j|, via the cumulative-difference identity."""
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    if av.shape != bv.shape or av.ndim != 1:
        raise ValueError("inputs must be 1-D distributions of equal length")
    if abs(av.sum() - 1.0) > 1e-9 or abs(bv.sum() - 1.0) > 1e-9:
        raise ValueError("inputs must each sum to 1 within 1e-9")
    return float(np.abs(np.cumsum(av - bv)[:-1]).sum())


def positionwise_cost_matrix(freq: np.ndarray) -> np.ndarray:
    """Entry (c, t): earth mover's distance from column c of ``freq`` to a
    unit column at position t + 1.

    A unit column at position t has CDF 1 from cut t on, so the cumulative
    identity splits the cost into mass above t (already counted by the CDF)
    plus mass missing below t; both parts come from running sums, keeping
    the whole matrix O(m^2).
    """
    m = freq.shape[0]
    cdf = np.cumsum(freq, axis=0)[:-1, :]  # cuts k = 1..m-1, per column
    pre = np.zeros((m, m))
    pre[1:] = np.cumsum(cdf, axis=0)                    # sum_{k < t} CDF_k
    suf = np.zeros((m, m))
    suf[:-1] = np.cumsum((1.0 - cdf)[::-1], axis=0)[::-1]  # sum_{k >= t} (1 - CDF_k)
    return (pre + suf).T


def positionwise_distance_from_identity(p: Profile) -> float:
    """Normalized positionwise distance of the profile from the identity
    matrix; exact minimum over column bijections via optimal assignment."""
    if p.m < 2:
        raise ValueError("positionwise distance needs at least 2 alternatives")
    cost = positionwise_cost_matrix(frequency_matrix(p))
    rows, cols = linear_sum_assignment(cost)
    raw = float(cost[rows, cols].sum())
    return raw / ((p.m * p.m - 1.0) / 3.0)


def group_statistics(profiles: Sequence[Profile]) -> GroupStatistics:
    """Table-style averages of plurality-winner properties over a profile group."""
    if not profiles:
        raise ValueError("profile group must be non-empty")
    share = pos = is_borda = is_cond = 0.0
    for p in profiles:
        pw, pscores = plurality(p)
        bw, _ = borda(p)
        cw = condorcet(p)
        share += pscores[pw] / p.n
        avg_pos = sum(v.position(pw) for v in p.rankings) / p.n
        pos += (avg_pos - 1.0) / (p.m - 1.0) if p.m > 1 else 0.0
        is_borda += 1.0 if pw == bw else 0.0
        is_cond += 1.0 if cw == pw else 0.0
    k = len(profiles)
    return GroupStatistics(share / k, pos / k, is_borda / k, is_cond / k)
