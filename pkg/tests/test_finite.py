import pytest

from semiflow.finite import FiniteSemiflow
from semiflow.monoid import closed_box, is_syndetic, leq
from semiflow.corpus import random_finite


def brute_is_periodic(s: FiniteSemiflow, x: int) -> bool:
    # directly search for a fixing time with every coordinate positive
    hi = (3 * s.n,) * s.rank
    return any(
        s.act(t, x) == x for t in closed_box(hi) if all(v >= 1 for v in t)
    )


def test_commuting_rejection():
    with pytest.raises(ValueError):
        FiniteSemiflow(3, [(1, 2, 0), (0, 2, 1)])  # cycle vs transposition


def test_metric_validation():
    ok = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    FiniteSemiflow(3, [(0, 1, 2)], ok)
    bad_triangle = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    with pytest.raises(ValueError):
        FiniteSemiflow(3, [(0, 1, 2)], bad_triangle)
    with pytest.raises(ValueError):
        FiniteSemiflow(2, [(0, 1)], [[0, 0], [0, 0]])  # vanishing off-diagonal


def test_act_axioms_exhaustive_small():
    s = FiniteSemiflow(4, [(1, 2, 3, 0), (2, 3, 0, 1)])
    for x in s.points():
        assert s.act((0, 0), x) == x
        for a in closed_box((3, 3)):
            for b in closed_box((3, 3)):
                ab = tuple(u + v for u, v in zip(a, b))
                assert s.act(a, s.act(b, x)) == s.act(ab, x)


def test_fixer_three_cycle():
    s = FiniteSemiflow(3, [(1, 2, 0)])
    fx = s.fixer(0)
    assert fx.preperiod == (0,) and fx.period == (3,) and fx.residues == {(0,)}
    assert s.is_periodic(0)
    assert (3,) in fx and (6,) in fx and (1,) not in fx


def test_fixer_rho_shaped_map():
    s = FiniteSemiflow(3, [(1, 2, 1)])  # 0 -> 1 -> 2 -> 1
    f0 = s.fixer(0)
    assert (0,) in f0 and not f0.residues
    assert not s.is_periodic(0)
    f1 = s.fixer(1)
    assert f1.period == (2,) and f1.residues == {(0,)}
    assert s.is_periodic(1)


def test_fixer_rank_two_grid():
    s = FiniteSemiflow(2, [(0, 1), (1, 0)])  # identity and swap
    fx = s.fixer(0)
    assert fx.preperiod == (0, 0) and fx.period == (1, 2)
    assert fx.residues == {(0, 0)}
    assert s.is_periodic(0)
    assert (4, 6) in fx and (4, 5) not in fx


def test_is_periodic_matches_brute_force():
    for seed in range(40):
        k = 1 + seed % 2
        s = random_finite(2 + seed % 7, k, seed=900 + seed)
        for x in s.points():
            assert s.is_periodic(x) == brute_is_periodic(s, x), (seed, x)


def test_fixer_membership_matches_direct_action():
    # rank 1 fixers are exact everywhere; rank 2 fixers are exact on the
    # cone above the preperiod corner and on the fundamental box
    for seed in range(25):
        s1 = random_finite(2 + seed % 8, 1, seed=500 + seed)
        for x in s1.points():
            fx = s1.fixer(x)
            hi = tuple(p + 2 * q for p, q in zip(fx.preperiod, fx.period))
            for t in closed_box(hi):
                assert (t in fx) == (s1.act(t, x) == x), (seed, x, t)
    for seed in range(25):
        s2 = random_finite(2 + seed % 6, 2, seed=700 + seed)
        for x in s2.points():
            fx = s2.fixer(x)
            hi = tuple(p + 2 * q for p, q in zip(fx.preperiod, fx.period))
            box = tuple(p + q for p, q in zip(fx.preperiod, fx.period))
            for t in closed_box(hi):
                inside_box = all(v < b for v, b in zip(t, box))
                if leq(fx.preperiod, t) or inside_box:
                    assert (t in fx) == (s2.act(t, x) == x), (seed, x, t)


def test_periodic_points_have_pure_periodic_fixers():
    # syndetic fixers always sit at the origin corner
    for seed in range(30):
        s = random_finite(2 + seed % 8, 1 + seed % 2, seed=1300 + seed)
        for x in s.points():
            fx = s.fixer(x)
            if is_syndetic(fx).syndetic:
                assert fx.preperiod == (0,) * s.rank
                assert not fx.exceptional


def test_pair_separation_sup_is_true_supremum():
    s = FiniteSemiflow(4, [(1, 2, 3, 0)], [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])
    sup, t = s.pair_separation_sup(0, 1)
    brute = max(s.distance(s.act((i,), 0), s.act((i,), 1)) for i in range(20))
    assert sup == brute
    assert s.distance(s.act(t, 0), s.act(t, 1)) == sup


def test_discrete_metric_and_reach():
    s = FiniteSemiflow(3, [(1, 2, 1)])
    assert s.distance(0, 1) == 1 and s.distance(2, 2) == 0
    assert s.min_positive_distance() == 1
    assert s.reach(0) == {0, 1, 2}
    assert s.reach(1) == {1, 2}
