"""Closed-form quantities of the Mallows distribution, no sampling involved.

Every function accepts the full dispersion range [0, 1].  Formulas with a
removable singularity at ``phi = 1`` are evaluated through summation forms
that stay finite on the closed interval; the textbook geometric forms are
kept as separate functions so the two routes can be checked against each
other.  The convention ``0**0 == 1`` makes the ``phi = 0`` cases degenerate
correctly everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Ranking, identity_ranking, kendall_tau

# switch point below which the phi < 1 geometric forms are considered safe
PHI_ONE_SWITCH = 1.0 - 1e-6


def _check_phi(phi: float) -> float:
    phi = float(phi)
    if not 0.0 <= phi <= 1.0 or math.isnan(phi):
        raise ValueError(f"dispersion must lie in [0, 1], got {phi}")
    return phi


def _check_m(m: int, minimum: int = 1) -> int:
    if m < minimum:
        raise ValueError(f"need at least {minimum} alternatives, got {m}")
    return m


@dataclass(frozen=True)
class MallowsParams:
    """Dispersion, alternative count, and central order of one model instance."""

    phi: float
    m: int
    central: Optional[Ranking] = None

    def __post_init__(self):
        _check_phi(self.phi)
        _check_m(self.m)
        if self.central is not None and self.central.m != self.m:
            raise ValueError("central order does not cover m alternatives")

    def central_order(self) -> Ranking:
        return self.central if self.central is not None else identity_ranking(self.m)


def normalization_constant(phi: float, m: int) -> float:
    """Mass of the unnormalized distribution: prod_k (1 + phi + ... + phi^(k-1)).

    Evaluated by direct summation (running recurrence), so it is exact at
    ``phi = 1`` where it equals ``m!``.
    """
    phi = _check_phi(phi)
    _check_m(m)
    z = 1.0
    s = 1.0
    for _ in range(1, m):
        s = 1.0 + phi * s
        z *= s
    return z


def mallows_pmf(v: Ranking, p: MallowsParams) -> float:
    """Probability of sampling ``v``: phi^dist(central, v) / Z(phi, m)."""
    if v.m != p.m:
        raise ValueError("ranking does not cover the model's alternatives")
    d = kendall_tau(p.central_order(), v)
    if p.phi == 0.0:
        return 1.0 if d == 0 else 0.0
    return p.phi ** d / normalization_constant(p.phi, p.m)


def expected_swap_distance(phi: float, m: int) -> float:
    """Expected swap distance between a sampled ranking and the central one.

    Uses the insertion decomposition: inserting the k-th alternative creates
    ``i`` new inversions with probability proportional to ``phi**i``, so the
    expectation is ``sum_k E[i_k]`` with each summand a truncated-geometric
    mean minus one.  All terms are non-negative, so the sum is stable and
    exact on the whole closed interval, ``phi = 1`` included (value
    ``m(m-1)/4``).
    """
    phi = _check_phi(phi)
    _check_m(m)
    e = np.arange(m, dtype=np.float64)
    p = np.power(phi, e)
    return float(np.sum(np.cumsum(e * p) / np.cumsum(p)))


# B_{2n} / (2n)! for n = 1..6; tail coefficients of x/(e^x - 1)
_BERN_OVER_FACT = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
)


def _exp_ratio(x: float) -> float:
    # x / (e^x - 1) for x > 0
    if x > 700.0:
        return x * math.exp(-x)
    return x / math.expm1(x)


def expected_swap_distance_geometric(phi: float, m: int) -> float:
    """Geometric-series form of :func:`expected_swap_distance`, for phi < 1:

        m*phi/(1-phi) - sum_i i*phi^i / (1-phi^i)

    Evaluated termwise as ``sum_i (f(x) - f(i*x)) / x`` with
    ``x = -log(phi)`` and ``f(x) = x/(e^x - 1)``, switching to the Bernoulli
    expansion of f when ``i*x`` is small; this keeps the route accurate right
    up to phi = 1 - 1e-6 where the two halves of the raw formula cancel to
    O(m^2) out of O(m/(1-phi)).  Exists as an independent evaluation path for
    checking :func:`expected_swap_distance`.
    """
    phi = _check_phi(phi)
    _check_m(m)
    if phi >= 1.0:
        raise ValueError("geometric form is only defined for phi < 1")
    if phi == 0.0 or m == 1:
        return 0.0
    x = -math.log(phi)
    f1 = _exp_ratio(x)
    x2 = x * x
    terms = []
    for i in range(1, m + 1):
        xi = i * x
        if xi <= 0.5:
            i2 = float(i * i)
            acc = (i - 1) / 2.0
            p = x
            ipow = i2
            for c in _BERN_OVER_FACT:
                acc += c * p * (1.0 - ipow)
                p *= x2
                ipow *= i2
            terms.append(acc)
        else:
            terms.append((f1 - _exp_ratio(xi)) / x)
    return math.fsum(terms)


def normalized_swap_distance(phi: float, m: int) -> float:
    """Expected swap distance scaled into [0, 1] by its phi=1 value m(m-1)/4."""
    _check_m(m, 2)
    return 4.0 * expected_swap_distance(phi, m) / (m * (m - 1.0))


def _geom_powers(phi: float, m: int) -> np.ndarray:
    return np.power(phi, np.arange(m, dtype=np.float64))


def top_choice_position_pmf(i: int, phi: float, m: int) -> float:
    """Probability that the central order's best alternative lands at position i."""
    phi = _check_phi(phi)
    _check_m(m)
    if not 1 <= i <= m:
        raise ValueError(f"position must lie in 1..{m}, got {i}")
    return phi ** (i - 1) / float(np.sum(_geom_powers(phi, m)))


def expected_top_choice_position(phi: float, m: int) -> float:
    """Expected position of the central order's best alternative.

    This is the mean of a truncated geometric law; the summation form equals
    ``1/(1-phi) - m*phi^m/(1-phi^m)`` for phi < 1 and ``(m+1)/2`` at phi = 1.
    """
    phi = _check_phi(phi)
    _check_m(m)
    e = np.arange(m, dtype=np.float64)
    p = np.power(phi, e)
    return 1.0 + float(np.sum(e * p) / np.sum(p))


def normalized_expected_position(phi: float, m: int) -> float:
    """Expected position of the best alternative, rescaled so 0 is first place
    (phi = 0) and 1 is the uniform average (phi = 1)."""
    phi = _check_phi(phi)
    _check_m(m, 2)
    e = np.arange(m, dtype=np.float64)
    p = np.power(phi, e)
    return 2.0 * float(np.sum(e * p) / np.sum(p)) / (m - 1.0)


def normalized_top_choice_prob(phi: float, m: int) -> float:
    """Probability of first place for the best alternative, rescaled to [0, 1]:
    1 at phi = 0, 0 at phi = 1 (where the probability is 1/m)."""
    phi = _check_phi(phi)
    _check_m(m, 2)
    if phi == 0.0:
        return 1.0
    # m - S with S the geometric sum, summed without cancellation
    jlog = np.arange(m, dtype=np.float64) * math.log(phi)
    d = float(np.sum(-np.expm1(jlog)))
    return d / ((m - d) * (m - 1.0))


def pairwise_beat_prob(i: int, j: int, phi: float) -> float:
    """Probability that the i-th central alternative is ranked before the j-th.

    Depends only on ``k = j - i + 1``, not on the total number of
    alternatives.  Closed form for moderate phi; for phi within 1e-6 of 1
    the positive-sum insertion form is used, which is exact at phi = 1
    (value 1/2) and free of cancellation.
    """
    if i < 1 or j <= i:
        raise ValueError(f"indices must satisfy 1 <= i < j, got ({i}, {j})")
    phi = _check_phi(phi)
    k = j - i + 1
    if phi == 0.0:
        return 1.0
    if phi == 1.0:
        return 0.5
    if phi <= PHI_ONE_SWITCH:
        logphi = math.log(phi)
        a = -math.expm1(k * logphi)        # 1 - phi^k
        b = -math.expm1((k - 1) * logphi)  # 1 - phi^(k-1)
        return (1.0 - (1.0 - phi) * (k - 1) * math.exp((k - 1) * logphi) / b) / a
    # sum over the best alternative's position when the k-th one is inserted
    p = np.power(phi, np.arange(k, dtype=np.float64))
    s = np.cumsum(p)  # s[t-1] = 1 + phi + ... + phi^(t-1)
    num = float(np.dot(p[: k - 1], s[k - 2 :: -1]))
    return num / (s[k - 2] * s[k - 1])


def normalized_first_beats_last(phi: float, m: int) -> float:
    """Probability that the best central alternative beats the worst one,
    rescaled from its [1/2, 1] range to [0, 1]."""
    _check_m(m, 2)
    return 2.0 * pairwise_beat_prob(1, m, phi) - 1.0
