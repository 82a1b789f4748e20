"""Exact brute-force reference computations over all m! rankings.

Everything here enumerates the full permutation group (lexicographic order,
hard cap m <= 8) and therefore only exists to validate the closed forms and
to regenerate frozen test values.  Summations are compensated so that even
the 40320-term tables keep full double precision.
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import Callable, Iterator

from .analytic import MallowsParams, _check_phi, mallows_pmf
from .core import Ranking

ORACLE_MAX_M = 8
ASSIGNMENT_MAX_M = 6


class CapacityError(ValueError):
    """Requested size exceeds the brute-force cap."""


def _check_cap(m: int, cap: int) -> None:
    if m < 1:
        raise ValueError(f"need at least one alternative, got {m}")
    if m > cap:
        raise CapacityError(f"brute force is capped at m={cap}, got {m}")


def all_rankings(m: int) -> Iterator[Ranking]:
    """Every ranking of m alternatives, in lexicographic order of the order
    sequence (reproducible enumeration)."""
    _check_cap(m, ORACLE_MAX_M)
    for perm in permutations(range(m)):
        yield Ranking(perm)


def exhaustive_table(phi: float, m: int) -> list[tuple[Ranking, float]]:
    """All m! rankings paired with their probability mass."""
    _check_cap(m, ORACLE_MAX_M)
    _check_phi(phi)
    params = MallowsParams(phi, m)
    return [(v, mallows_pmf(v, params)) for v in all_rankings(m)]


def exact_expectation(phi: float, m: int, statistic: Callable[[Ranking], float]) -> float:
    """Expectation of ``statistic`` under the model, by full enumeration."""
    table = exhaustive_table(phi, m)
    return math.fsum(w * statistic(v) for v, w in table)


def exact_pair_prob(phi: float, m: int, i: int, j: int) -> float:
    """Probability that the i-th central alternative precedes the j-th one."""
    _check_cap(m, ORACLE_MAX_M)
    if not 1 <= i < j <= m:
        raise ValueError(f"indices must satisfy 1 <= i < j <= m, got ({i}, {j})")
    return exact_expectation(
        phi, m, lambda v: 1.0 if v.position(i - 1) < v.position(j - 1) else 0.0
    )


def exact_assignment_min(cost) -> float:
    """Minimum assignment cost over all bijections, for matrices up to 6x6."""
    rows = [list(map(float, row)) for row in cost]
    m = len(rows)
    _check_cap(m, ASSIGNMENT_MAX_M)
    if any(len(row) != m for row in rows):
        raise ValueError("cost matrix must be square")
    best = math.inf
    for perm in permutations(range(m)):
        total = math.fsum(rows[r][c] for r, c in enumerate(perm))
        if total < best:
            best = total
    return best
