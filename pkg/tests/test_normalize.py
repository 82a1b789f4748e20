import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import spence

from mallows.analytic import normalized_swap_distance, normalized_top_choice_prob
from mallows.normalize import (
    ConvergenceError,
    NormPhiSpec,
    dilog,
    limit_first_beats_last,
    limit_normalized_position,
    norm_phi_from_phi,
    norm_phi_from_rate,
    phi_from_norm_phi,
    rate_from_norm_phi,
    rate_kernel,
)

ELL_GRID = [i / 20 for i in range(21)]


def rate_quadrature(L: float) -> float:
    """Independent oracle: adaptive quadrature of 4 * integral of the kernel."""
    value, err = quad(lambda s: rate_kernel(s, L), 0.0, 1.0, epsabs=1e-13, epsrel=1e-13)
    assert err < 1e-11
    return 4.0 * value


# ------------------------------------------------------------- conversions

def test_conversion_shortcuts_and_example():
    assert phi_from_norm_phi(0.0, 17) == 0.0
    assert phi_from_norm_phi(1.0, 17) == 1.0
    # g(phi, 2) = 2 phi / (1 + phi), solved at 1/2 gives phi = 1/3
    assert phi_from_norm_phi(0.5, 2) == pytest.approx(1 / 3, abs=1e-10)


def test_norm_phi_from_phi_is_swap_alias():
    for phi in (0.0, 0.3, 1.0):
        assert norm_phi_from_phi(phi, 6) == normalized_swap_distance(phi, 6)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8, 9, 10, 50, 200])
def test_conversion_round_trip(m):
    for ell in ELL_GRID:
        phi = phi_from_norm_phi(ell, m)
        assert normalized_swap_distance(phi, m) == pytest.approx(ell, abs=1e-8)


def test_conversion_monotone_in_ell_and_m():
    ms = [2, 3, 5, 10, 50, 200]
    for m in ms:
        phis = [phi_from_norm_phi(ell, m) for ell in ELL_GRID]
        assert all(a < b for a, b in zip(phis, phis[1:]))
    for ell in (0.25, 0.5, 0.75):
        phis = [phi_from_norm_phi(ell, m) for m in ms]
        assert all(a < b for a, b in zip(phis, phis[1:]))


def test_conversion_validation():
    with pytest.raises(ValueError):
        phi_from_norm_phi(1.5, 10)
    with pytest.raises(ValueError):
        phi_from_norm_phi(0.5, 1)
    with pytest.raises(ValueError):
        phi_from_norm_phi(0.5, 10, tol=0.0)
    with pytest.raises(ConvergenceError):
        # float granularity of phi near 1 cannot express this residual
        phi_from_norm_phi(0.5, 10 ** 7, tol=1e-15)


def test_norm_phi_spec_validation():
    NormPhiSpec(0.5, 2)
    with pytest.raises(ValueError):
        NormPhiSpec(-0.1, 5)
    with pytest.raises(ValueError):
        NormPhiSpec(0.5, 1)


# ------------------------------------------------------------------ kernel

def test_rate_kernel_at_zero_and_monotone():
    assert rate_kernel(1.0, 0.0) == pytest.approx(0.5, rel=1e-15)
    assert rate_kernel(0.4, 0.0) == pytest.approx(0.2, rel=1e-15)
    xs = np.linspace(-30.0, 30.0, 601)
    vals = [rate_kernel(1.0, x) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_rate_kernel_tail_and_domain():
    assert rate_kernel(1.0, 50.0) == pytest.approx(1 / 50, rel=1e-12)
    with pytest.raises(ValueError):
        rate_kernel(0.0, 1.0)
    with pytest.raises(ValueError):
        rate_kernel(1.5, 1.0)


def test_rate_kernel_branch_overlap():
    # series and direct evaluation agree to >= 10 significant digits
    for z in (0.5e-4, 0.9e-4, 1.1e-4, 1e-3):
        for s in (0.3, 1.0):
            x = z / s
            a, b = 1.0 / x - s / math.expm1(s * x), rate_kernel(s, x)
            assert math.isclose(a, b, rel_tol=1e-10)


# ------------------------------------------------------------------- dilog

def test_dilog_anchors():
    assert dilog(0.0) == 0.0
    assert dilog(1.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    # frozen from the 40-digit series evaluation
    assert dilog(math.exp(-1)) == pytest.approx(0.4087542873488963, abs=1e-13)
    with pytest.raises(ValueError):
        dilog(-0.01)
    with pytest.raises(ValueError):
        dilog(1.01)


def test_dilog_against_scipy():
    for z in np.linspace(0.0, 1.0, 97):
        assert dilog(float(z)) == pytest.approx(float(spence(1.0 - z)), abs=1e-12)


def test_dilog_series_partial_sums():
    z = 0.37
    acc = sum(z ** k / k ** 2 for k in range(1, 200))
    assert dilog(z) == pytest.approx(acc, abs=1e-14)


# ----------------------------------------------------------------- rate map

def test_rate_map_anchors():
    assert norm_phi_from_rate(0.0) == 1.0
    # frozen from the quadrature oracle
    assert norm_phi_from_rate(1.0) == pytest.approx(0.8899814635510069, abs=1e-12)
    with pytest.raises(ValueError):
        norm_phi_from_rate(-0.5)


@pytest.mark.parametrize("L", [0.1, 1.0, 5.0, 20.0])
def test_rate_map_matches_quadrature(L):
    assert norm_phi_from_rate(L) == pytest.approx(rate_quadrature(L), abs=1e-9)


def test_rate_map_series_closed_form_overlap():
    for L in (0.2, 0.35, 0.5, 0.55, 0.8):
        e = math.exp(-L)
        closed = 4.0 * (
            1.0 / L - math.log1p(-e) / L + (dilog(e) - math.pi ** 2 / 6) / (L * L)
        )
        assert math.isclose(norm_phi_from_rate(L), closed, rel_tol=1e-10)


def test_rate_map_strictly_decreasing():
    Ls = np.concatenate([np.linspace(1e-3, 2, 50), np.linspace(2, 60, 50)])
    vals = [norm_phi_from_rate(float(L)) for L in Ls]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_rate_inverse_pair():
    assert rate_from_norm_phi(1.0) == 0.0
    for L in np.geomspace(1e-3, 50, 40):
        ell = norm_phi_from_rate(float(L))
        assert rate_from_norm_phi(ell) == pytest.approx(float(L), abs=1e-8, rel=1e-8)
    assert rate_from_norm_phi(0.8899814635510069) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        rate_from_norm_phi(0.0)
    with pytest.raises(ValueError):
        rate_from_norm_phi(1.5)


# ------------------------------------------------------------- limit curves

def test_limit_curves_at_one():
    assert limit_normalized_position(1.0) == pytest.approx(1.0, rel=1e-14)
    assert limit_first_beats_last(1.0) == pytest.approx(0.0, abs=1e-14)


def test_limit_curves_monotone():
    ells = np.linspace(0.02, 1.0, 50)
    pos = [limit_normalized_position(float(e)) for e in ells]
    beats = [limit_first_beats_last(float(e)) for e in ells]
    assert all(a < b for a, b in zip(pos, pos[1:]))
    assert all(a > b for a, b in zip(beats, beats[1:]))


def test_limit_beats_branch_overlap():
    # exp route vs series route around the kernel switch
    for x in (0.5e-2, 0.9e-2, 1.1e-2, 5e-2):
        direct = 2.0 / -math.expm1(-x) * (1.0 - x / math.expm1(x)) - 1.0
        ell = norm_phi_from_rate(x)
        assert math.isclose(limit_first_beats_last(ell), direct, rel_tol=1e-9)


def test_finite_m_curves_approach_limits():
    m = 2000
    for ell in (0.25, 0.5, 0.75):
        phi = phi_from_norm_phi(ell, m)
        from mallows.analytic import (
            normalized_expected_position,
            normalized_first_beats_last,
        )
        assert abs(normalized_expected_position(phi, m) - limit_normalized_position(ell)) < 1e-2
        assert abs(normalized_first_beats_last(phi, m) - limit_first_beats_last(ell)) < 1e-2


def test_classic_parameterization_collapses_top_choice():
    # under the normalized parameterization the first-place statistic decays
    # toward zero as m grows over the decades
    ell = 0.5
    values = [
        normalized_top_choice_prob(phi_from_norm_phi(ell, m), m)
        for m in (10, 100, 1000, 10000)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < 0.05


def test_memoization_does_not_change_results():
    a = phi_from_norm_phi(0.37, 20)
    b = phi_from_norm_phi(0.37, 20)
    assert a == b
