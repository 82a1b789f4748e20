import math

import numpy as np
import pytest

from mallows.analytic import (
    MallowsParams,
    expected_swap_distance,
    expected_swap_distance_geometric,
    expected_top_choice_position,
    mallows_pmf,
    normalization_constant,
    normalized_expected_position,
    normalized_first_beats_last,
    normalized_swap_distance,
    normalized_top_choice_prob,
    pairwise_beat_prob,
    top_choice_position_pmf,
)
from mallows.core import Ranking, identity_ranking, kendall_tau
from mallows.oracle import all_rankings, exact_expectation, exact_pair_prob

PHI_GRID = [i / 10 for i in range(11)]


# ------------------------------------------------------------ normalization

@pytest.mark.parametrize("m", [1, 2, 5, 8])
def test_normalization_constant_endpoints(m):
    assert normalization_constant(0.0, m) == 1.0
    assert normalization_constant(1.0, m) == math.factorial(m)


def test_normalization_constant_value():
    assert normalization_constant(0.5, 2) == pytest.approx(1.5, abs=0)


def test_normalization_constant_domain():
    with pytest.raises(ValueError):
        normalization_constant(-0.1, 3)
    with pytest.raises(ValueError):
        normalization_constant(1.1, 3)


# --------------------------------------------------------------------- pmf

def test_pmf_examples():
    p2 = MallowsParams(0.5, 2)
    assert mallows_pmf(Ranking((1, 0)), p2) == pytest.approx(1 / 3, rel=1e-15)
    assert mallows_pmf(identity_ranking(3), MallowsParams(0.0, 3)) == 1.0
    for v in all_rankings(3):
        assert mallows_pmf(v, MallowsParams(1.0, 3)) == pytest.approx(1 / 6, rel=1e-15)


def test_pmf_mismatch():
    with pytest.raises(ValueError):
        mallows_pmf(identity_ranking(3), MallowsParams(0.5, 4))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("phi", PHI_GRID)
def test_pmf_sums_to_one(phi, m):
    params = MallowsParams(phi, m)
    total = math.fsum(mallows_pmf(v, params) for v in all_rankings(m))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_pmf_respects_central_order():
    central = Ranking((2, 0, 1))
    params = MallowsParams(0.3, 3, central=central)
    assert mallows_pmf(central, params) == pytest.approx(
        mallows_pmf(identity_ranking(3), MallowsParams(0.3, 3)), rel=1e-15
    )


# --------------------------------------------------- expected swap distance

def test_expected_swap_distance_endpoints():
    for m in (1, 2, 7, 40):
        assert expected_swap_distance(0.0, m) == 0.0
        assert expected_swap_distance(1.0, m) == pytest.approx(m * (m - 1) / 4, rel=1e-14)


def test_expected_swap_distance_values():
    assert expected_swap_distance(0.5, 2) == pytest.approx(1 / 3, rel=1e-14)
    # frozen from an independent high-precision evaluation of both forms
    assert expected_swap_distance(0.5, 10) == pytest.approx(7.267688465493336, rel=1e-13)


@pytest.mark.parametrize("phi", PHI_GRID[:-1] + [0.99, 0.9999, 1 - 1e-6])
@pytest.mark.parametrize("m", [1, 2, 3, 10, 137])
def test_two_swap_distance_paths_agree(phi, m):
    a = expected_swap_distance(phi, m)
    b = expected_swap_distance_geometric(phi, m)
    assert math.isclose(a, b, rel_tol=1e-10, abs_tol=1e-300)


def test_geometric_path_rejects_phi_one():
    with pytest.raises(ValueError):
        expected_swap_distance_geometric(1.0, 5)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("phi", PHI_GRID)
def test_expected_swap_distance_vs_oracle(phi, m):
    center = identity_ranking(m)
    want = exact_expectation(phi, m, lambda v: kendall_tau(v, center))
    assert expected_swap_distance(phi, m) == pytest.approx(want, abs=1e-10)


def test_normalized_swap_distance_range_and_examples():
    assert normalized_swap_distance(0.0, 9) == 0.0
    assert normalized_swap_distance(1.0, 9) == pytest.approx(1.0, rel=1e-14)
    assert normalized_swap_distance(0.5, 2) == pytest.approx(2 / 3, rel=1e-14)
    assert normalized_swap_distance(0.5, 100) < 0.05
    values = [normalized_swap_distance(0.5, m) for m in (2, 5, 20, 100, 400)]
    assert all(a > b for a, b in zip(values, values[1:]))
    with pytest.raises(ValueError):
        normalized_swap_distance(0.5, 1)


# ----------------------------------------------------------- position of c1

def test_top_choice_position_pmf_examples():
    assert top_choice_position_pmf(1, 0.0, 5) == 1.0
    assert top_choice_position_pmf(3, 0.0, 5) == 0.0
    for i in range(1, 5):
        assert top_choice_position_pmf(i, 1.0, 4) == pytest.approx(0.25, rel=1e-15)
    assert top_choice_position_pmf(2, 0.5, 3) == pytest.approx(2 / 7, rel=1e-14)
    with pytest.raises(ValueError):
        top_choice_position_pmf(0, 0.5, 3)
    with pytest.raises(ValueError):
        top_choice_position_pmf(4, 0.5, 3)


@pytest.mark.parametrize("phi", PHI_GRID)
@pytest.mark.parametrize("m", [2, 4, 6])
def test_top_choice_position_pmf_vs_oracle(phi, m):
    total = 0.0
    for i in range(1, m + 1):
        want = exact_expectation(phi, m, lambda v: 1.0 if v.position(0) == i else 0.0)
        got = top_choice_position_pmf(i, phi, m)
        assert got == pytest.approx(want, abs=1e-12)
        total += got
    assert total == pytest.approx(1.0, abs=1e-12)


def test_expected_top_choice_position():
    assert expected_top_choice_position(0.0, 11) == 1.0
    assert expected_top_choice_position(1.0, 11) == pytest.approx(6.0, rel=1e-14)
    assert expected_top_choice_position(0.5, 2) == pytest.approx(4 / 3, rel=1e-14)
    # the phi < 1 geometric identity
    for phi in (0.2, 0.7, 0.95):
        for m in (3, 17):
            want = 1 / (1 - phi) - m * phi ** m / (1 - phi ** m)
            assert expected_top_choice_position(phi, m) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("phi", PHI_GRID)
@pytest.mark.parametrize("m", [2, 5])
def test_expected_position_is_pmf_mean(phi, m):
    want = math.fsum(i * top_choice_position_pmf(i, phi, m) for i in range(1, m + 1))
    assert expected_top_choice_position(phi, m) == pytest.approx(want, abs=1e-12)


def test_normalized_position_examples():
    assert normalized_expected_position(0.0, 6) == 0.0
    assert normalized_expected_position(1.0, 6) == pytest.approx(1.0, rel=1e-14)
    assert normalized_expected_position(0.5, 2) == pytest.approx(2 / 3, rel=1e-14)


def test_normalized_top_choice_prob_examples():
    assert normalized_top_choice_prob(0.0, 7) == 1.0
    assert normalized_top_choice_prob(1.0, 7) == 0.0
    assert normalized_top_choice_prob(0.5, 2) == pytest.approx(1 / 3, rel=1e-14)
    # for fixed phi the unnormalized first-place probability tends to 1 - phi
    raw = [
        normalized_top_choice_prob(0.5, m) * (m - 1) / m + 1 / m
        for m in (10, 100, 1000)
    ]
    assert raw[-1] == pytest.approx(0.5, abs=1e-6)


# ------------------------------------------------------ pairwise comparisons

def test_pairwise_beat_prob_examples():
    assert pairwise_beat_prob(1, 2, 0.0) == 1.0
    assert pairwise_beat_prob(1, 2, 1.0) == 0.5
    assert pairwise_beat_prob(1, 2, 0.5) == pytest.approx(2 / 3, rel=1e-14)
    assert pairwise_beat_prob(1, 3, 0.5) == pytest.approx(16 / 21, rel=1e-14)
    with pytest.raises(ValueError):
        pairwise_beat_prob(2, 2, 0.5)
    with pytest.raises(ValueError):
        pairwise_beat_prob(3, 1, 0.5)


@pytest.mark.parametrize("phi", PHI_GRID)
def test_pairwise_beat_prob_vs_oracle_all_pairs(phi):
    m = 5
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            want = exact_pair_prob(phi, m, i, j)
            assert pairwise_beat_prob(i, j, phi) == pytest.approx(want, abs=1e-12)


def test_pairwise_beat_prob_independent_of_m():
    # same gap, different absolute indices: identical probability
    for phi in (0.3, 0.8):
        assert pairwise_beat_prob(1, 3, phi) == pytest.approx(
            pairwise_beat_prob(4, 6, phi), rel=1e-15
        )


def test_pairwise_branch_overlap():
    # closed form vs positive-sum form agree around the switch point
    for phi in (1 - 2e-6, 1 - 1e-6, 1 - 5e-7):
        for k in (2, 5, 40):
            logphi = math.log(phi)
            a = -math.expm1(k * logphi)
            b = -math.expm1((k - 1) * logphi)
            closed = (1 - (1 - phi) * (k - 1) * math.exp((k - 1) * logphi) / b) / a
            p = np.power(phi, np.arange(k, dtype=float))
            s = np.cumsum(p)
            positive = float(np.dot(p[: k - 1], s[k - 2 :: -1])) / (s[k - 2] * s[k - 1])
            assert math.isclose(closed, positive, rel_tol=1e-10)


def test_normalized_first_beats_last():
    assert normalized_first_beats_last(0.0, 4) == 1.0
    assert normalized_first_beats_last(1.0, 4) == 0.0
    assert normalized_first_beats_last(0.5, 2) == pytest.approx(1 / 3, rel=1e-14)
    assert normalized_first_beats_last(0.5, 3) == pytest.approx(11 / 21, rel=1e-14)


# ------------------------------------------------------------- monotonicity

@pytest.mark.parametrize(
    "fun,direction",
    [
        (normalized_swap_distance, +1),
        (normalized_expected_position, +1),
        (normalized_top_choice_prob, -1),
        (normalized_first_beats_last, -1),
    ],
)
def test_strict_monotonicity_on_grid(fun, direction):
    # m = 5 keeps every grid increment above float resolution (for larger m
    # the pairwise statistic is flat at 1.0 to machine precision near phi=0)
    m = 5
    grid = np.linspace(0.0, 1.0, 1001)
    values = [fun(phi, m) for phi in grid]
    diffs = np.diff(values) * direction
    assert np.all(diffs > 0)
