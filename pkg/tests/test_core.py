import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mallows.core import (
    Profile,
    Ranking,
    identity_ranking,
    kendall_tau,
    random_restriction,
    restrict_profile,
)
from mallows.rng import SplitMix64


def brute_pair_count(u: Ranking, v: Ranking) -> int:
    count = 0
    for a in range(u.m):
        for b in range(a + 1, u.m):
            if (u.position(a) < u.position(b)) != (v.position(a) < v.position(b)):
                count += 1
    return count


def rankings(max_m=8):
    return st.integers(2, max_m).flatmap(
        lambda m: st.permutations(list(range(m))).map(lambda p: Ranking(tuple(p)))
    )


def test_ranking_validation():
    with pytest.raises(ValueError):
        Ranking((0, 0, 1))
    with pytest.raises(ValueError):
        Ranking((0, 2))
    r = Ranking((2, 0, 1))
    assert r.position(2) == 1
    assert r.position(1) == 3


def test_kendall_tau_examples():
    v = Ranking((0, 1, 2))
    assert kendall_tau(v, v) == 0
    assert kendall_tau(v, Ranking((2, 1, 0))) == 3
    u4 = identity_ranking(4)
    assert kendall_tau(u4, Ranking((1, 0, 2, 3))) == 1


def test_kendall_tau_mismatched_sets():
    with pytest.raises(ValueError):
        kendall_tau(identity_ranking(3), identity_ranking(4))


@given(rankings(6), rankings(6))
def test_kendall_tau_equals_brute_pair_count(u, v):
    if u.m != v.m:
        return
    assert kendall_tau(u, v) == brute_pair_count(u, v)


@given(rankings(), rankings())
def test_kendall_tau_symmetric_and_bounded(u, v):
    if u.m != v.m:
        return
    d = kendall_tau(u, v)
    assert d == kendall_tau(v, u)
    assert 0 <= d <= u.m * (u.m - 1) // 2
    assert (d == 0) == (u == v)


@settings(max_examples=60)
@given(st.integers(2, 8), st.data())
def test_kendall_tau_triangle_inequality(m, data):
    perm = st.permutations(list(range(m)))
    u, v, w = (Ranking(tuple(data.draw(perm))) for _ in range(3))
    assert kendall_tau(u, w) <= kendall_tau(u, v) + kendall_tau(v, w)


def test_restrict_profile_examples():
    p = Profile(rankings=(Ranking((1, 0, 2)),))
    full = restrict_profile(p, {0, 1, 2})
    assert full.rankings == p.rankings
    r = restrict_profile(p, {0, 2})
    assert r.rankings[0].order == (0, 1)  # (c1, c3) after re-densifying
    assert r.ids == (1, 3)

    ident = Profile(rankings=(identity_ranking(5),) * 3)
    sub = restrict_profile(ident, {1, 3, 4})
    assert all(v == identity_ranking(3) for v in sub.rankings)


def test_restrict_profile_errors():
    p = Profile(rankings=(identity_ranking(3),))
    with pytest.raises(ValueError):
        restrict_profile(p, set())
    with pytest.raises(ValueError):
        restrict_profile(p, {0, 7})


@settings(max_examples=50)
@given(st.integers(2, 8), st.data())
def test_restriction_never_increases_distance(m, data):
    perm = st.permutations(list(range(m)))
    u = Ranking(tuple(data.draw(perm)))
    v = Ranking(tuple(data.draw(perm)))
    keep = data.draw(st.sets(st.integers(0, m - 1), min_size=1, max_size=m))
    keep_sorted = sorted(keep)
    before = kendall_tau(u, v)
    after = kendall_tau(u.restrict(keep_sorted), v.restrict(keep_sorted))
    assert after <= before


def test_random_restriction_determinism_and_bounds():
    p = Profile(rankings=(identity_ranking(10),) * 4)
    a = random_restriction(p, 4, SplitMix64(7))
    b = random_restriction(p, 4, SplitMix64(7))
    assert a == b
    assert a.m == 4
    full = random_restriction(p, 10, SplitMix64(7))
    assert full.ids == p.ids  # m_target = m keeps the alternative set
    with pytest.raises(ValueError):
        random_restriction(p, 0, SplitMix64(7))
    with pytest.raises(ValueError):
        random_restriction(p, 11, SplitMix64(7))


def test_random_restriction_is_uniform():
    # each alternative survives with frequency m_target/m, +/- 3 sigma binomial
    m, m_target, trials = 6, 2, 10_000
    p = Profile(rankings=(identity_ranking(m),))
    rng = SplitMix64(123)
    hits = [0] * m
    for _ in range(trials):
        kept = random_restriction(p, m_target, rng)
        for ext_id in kept.ids:
            hits[ext_id - 1] += 1
    want = trials * m_target / m
    sigma = (trials * (m_target / m) * (1 - m_target / m)) ** 0.5
    for h in hits:
        assert abs(h - want) <= 3 * sigma


def test_profile_validation():
    with pytest.raises(ValueError):
        Profile(rankings=())
    with pytest.raises(ValueError):
        Profile(rankings=(identity_ranking(2), identity_ranking(3)))
    with pytest.raises(ValueError):
        Profile(rankings=(identity_ranking(2),), ids=(1, 1))
