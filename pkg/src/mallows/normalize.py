"""Conversion between the dispersion parameter and its normalized form, plus
the asymptotic limit machinery for large alternative counts.

The normalized parameter of a model with dispersion ``phi`` over ``m``
alternatives is the normalized expected swap distance
:func:`~mallows.analytic.normalized_swap_distance`.  The reverse direction
has no closed form, but the map is strictly increasing and continuous, so a
bisection recovers ``phi`` exactly up to tolerance.

As ``m`` grows with the normalized parameter held at ``ell``, the dispersion
behaves like ``1 - rate/m`` where ``rate = rate_from_norm_phi(ell)`` solves

    4 * integral_0^1 rate_kernel(s, rate) ds == ell.

The integral has a closed form through the dilogarithm; both the closed form
and the limit curves of the position and pairwise-comparison statistics are
implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .analytic import _check_m, _check_phi, normalized_swap_distance

PI2_6 = math.pi * math.pi / 6.0

# below this, exp-based kernels switch to their entire-series forms
_SERIES_SWITCH = 1e-4
_BEATS_SERIES_SWITCH = 1e-2

_MAX_BISECT = 200


class ConvergenceError(ArithmeticError):
    """Root search failed to reach the requested residual tolerance."""


@dataclass(frozen=True)
class NormPhiSpec:
    """A normalized dispersion value together with the alternative count."""

    norm_phi: float
    m: int

    def __post_init__(self):
        _check_phi(self.norm_phi)
        _check_m(self.m, 2)


def norm_phi_from_phi(phi: float, m: int) -> float:
    """Normalized dispersion of the classic model (alias of the normalized
    expected swap distance; exposed for conversion symmetry)."""
    return normalized_swap_distance(phi, m)


def phi_from_norm_phi(norm_phi: float, m: int, tol: float = 1e-12) -> float:
    """Dispersion whose normalized expected swap distance equals ``norm_phi``.

    Bisection on [0, 1]; valid because the target map is strictly increasing
    and continuous.  ``tol`` bounds the residual on the normalized scale.
    The default suits m up to a few thousand; for much larger m the float64
    granularity of phi near 1 caps the reachable residual at roughly
    ``m * 1e-17``, so pass a looser tolerance there.

    Raises
    ------
    ConvergenceError
        If 200 halvings do not reach ``tol``.
    """
    _check_phi(norm_phi)
    _check_m(m, 2)
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    return _phi_from_norm_phi_cached(float(norm_phi), int(m), float(tol))


@lru_cache(maxsize=4096)
def _phi_from_norm_phi_cached(norm_phi: float, m: int, tol: float) -> float:
    if norm_phi == 0.0:
        return 0.0
    if norm_phi == 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        g = normalized_swap_distance(mid, m)
        if abs(g - norm_phi) <= tol:
            return mid
        if g < norm_phi:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"no phi with |norm_phi residual| <= {tol} at m={m}; "
        f"reached [{lo}, {hi}]"
    )


def _series_ratio(z: float) -> tuple[float, float]:
    # A(z) = sum z^t/(t+2)!,  B(z) = sum z^t/(t+1)!; entire functions, the
    # 11-term truncation is exact to double precision for |z| <= 0.1
    a = b = 0.0
    fact = 1.0
    zp = 1.0
    for t in range(11):
        fact *= t + 1
        b += zp / fact
        a += zp / (fact * (t + 2))
        zp *= z
    return a, b


def rate_kernel(s: float, x: float) -> float:
    """The integrand 1/x - s/(e^(s*x) - 1), continued with value s/2 at x = 0.

    Strictly decreasing in x for fixed s in (0, 1].  Near ``s*x = 0`` the two
    terms cancel, so the evaluation switches to the ratio of entire series
    that represents the same function without cancellation.
    """
    if not 0.0 < s <= 1.0:
        raise ValueError(f"s must lie in (0, 1], got {s}")
    z = s * x
    if abs(z) < _SERIES_SWITCH:
        a, b = _series_ratio(z)
        return s * a / b
    if z > 700.0:
        return 1.0 / x
    return 1.0 / x - s / math.expm1(z)


def dilog(z: float) -> float:
    """Real dilogarithm sum_{k>=1} z^k / k^2 on [0, 1].

    Series below 1/2; the standard reflection through pi^2/6 - ln(z)ln(1-z)
    otherwise.  Absolute error well below 1e-12.
    """
    if not 0.0 <= z <= 1.0 or math.isnan(z):
        raise ValueError(f"dilog argument must lie in [0, 1], got {z}")
    if z == 1.0:
        return PI2_6
    if z > 0.5:
        return PI2_6 - math.log(z) * math.log1p(-z) - _dilog_series(1.0 - z)
    return _dilog_series(z)


def _dilog_series(z: float) -> float:
    acc = 0.0
    zp = z
    k = 1
    while True:
        term = zp / (k * k)
        acc += term
        if term < 1e-17 * (acc + 1e-300):
            return acc
        zp *= z
        k += 1


def _fraction_coeff(num: int, den: int, two_n: int) -> float:
    return float(4 * Fraction(num, den) / (math.factorial(two_n) * (two_n + 1)))


# coefficients of the small-rate expansion of norm_phi_from_rate: the even
# Bernoulli numbers B_2 .. B_16 scaled by 4 / ((2n)! (2n+1))
_RATE_SERIES = tuple(
    _fraction_coeff(num, den, 2 * (n + 1))
    for n, (num, den) in enumerate(
        [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6), (-3617, 510)]
    )
)


def norm_phi_from_rate(rate: float) -> float:
    """Limiting normalized swap distance when dispersion scales as 1 - rate/m.

    Equals ``4 * integral_0^1 rate_kernel(s, rate) ds``.  Strictly decreasing
    from 1 at rate 0 toward 0; evaluated through the dilogarithm closed form,
    with a Bernoulli series below rate 0.5 where the closed form cancels.
    """
    if rate < 0.0 or math.isnan(rate):
        raise ValueError(f"rate must be non-negative, got {rate}")
    if rate <= 0.5:
        acc = 1.0
        p = rate
        r2 = rate * rate
        for c in _RATE_SERIES:
            acc -= c * p
            p *= r2
        return acc
    e = math.exp(-rate)
    return 4.0 * (
        1.0 / rate
        - math.log1p(-e) / rate
        + (dilog(e) - PI2_6) / (rate * rate)
    )


def rate_from_norm_phi(ell: float) -> float:
    """Inverse of :func:`norm_phi_from_rate` on (0, 1].

    Zero maps to an infinite rate, which is not representable, so ``ell``
    must be strictly positive.  Bracketing starts at 4/ell (the large-rate
    behavior of the forward map) and grows until it encloses the root.
    """
    if not 0.0 < ell <= 1.0 or math.isnan(ell):
        raise ValueError(f"norm_phi must lie in (0, 1], got {ell}")
    if ell == 1.0:
        return 0.0
    lo = 0.0
    hi = 4.0 / ell
    while norm_phi_from_rate(hi) >= ell:
        hi *= 2.0
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if norm_phi_from_rate(mid) >= ell:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def limit_normalized_position(ell: float) -> float:
    """Large-m limit of the normalized expected position of the best
    alternative, at fixed normalized dispersion ``ell``; equals 1 at ell = 1
    and decreases toward 0."""
    x = rate_from_norm_phi(ell)
    return 2.0 * rate_kernel(1.0, x)


def limit_first_beats_last(ell: float) -> float:
    """Large-m limit of the rescaled probability that the best central
    alternative beats the worst one, at fixed normalized dispersion ``ell``."""
    x = rate_from_norm_phi(ell)
    if x < _BEATS_SERIES_SWITCH:
        # 2 e^x (e^x - 1 - x)/(e^x - 1)^2 - 1 via the entire-series ratio;
        # the exp route only carries ~7 digits this close to zero
        a, b = _series_ratio(x)
        return 2.0 * math.exp(x) * a / (b * b) - 1.0
    if x > 700.0:
        return 1.0
    return 2.0 / -math.expm1(-x) * (1.0 - x / math.expm1(x)) - 1.0
