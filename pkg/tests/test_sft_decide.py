import random

from semiflow.corpus import exhaustive_sft, mixed_random_sfts
from semiflow.sft import SftSystem
from semiflow.sft_decide import (
    analyze,
    brute_force_profile,
    divergent_pair_for_word,
    has_dense_periodic_points_exact,
    is_eventually_sensitive_exact,
    is_infinite_exact,
    is_minimal_exact,
    is_sensitive_exact,
    is_transitive_exact,
    is_ueq_exact,
    periodic_points_up_to,
    two_disjoint_periodic_orbits,
)

FULL2 = SftSystem(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
GOLDEN = SftSystem(2, [(0, 0), (0, 1), (1, 0)])
CYCLE3 = SftSystem(3, [(0, 1), (1, 2), (2, 0)])
PATH_LOOP = SftSystem(2, [(0, 1), (1, 1)])
TWO_LOOPS = SftSystem(2, [(0, 0), (1, 1)])
FAN = SftSystem(3, [(0, 1), (0, 2), (1, 1), (2, 2)])


def test_expected_property_table():
    # (system, tt, dpp, min, sensitive, infinite, ueq)
    rows = [
        (FULL2, True, True, False, True, True, False),
        (GOLDEN, True, True, False, True, True, False),
        (CYCLE3, True, True, True, False, False, True),
        (PATH_LOOP, False, False, False, False, False, True),
        (TWO_LOOPS, False, True, False, False, False, True),
        (FAN, False, False, False, False, False, True),
    ]
    for s, tt, dpp, mn, sens, inf, ueq in rows:
        assert is_transitive_exact(s) == tt, s
        assert has_dense_periodic_points_exact(s) == dpp, s
        assert is_minimal_exact(s) == mn, s
        assert is_sensitive_exact(s).sensitive == sens, s
        assert is_infinite_exact(s) == inf, s
        assert is_ueq_exact(s) == ueq, s


def test_sensitivity_constant_is_one():
    r = is_sensitive_exact(FULL2)
    assert r.sensitive and r.constant == 1
    assert is_sensitive_exact(CYCLE3).constant is None


def _agree(s: SftSystem) -> list[str]:
    bf = brute_force_profile(s, depth=12, period_bound=12)
    pairs = [
        ("tt", is_transitive_exact(s), bf.tt.value),
        ("dpp", has_dense_periodic_points_exact(s), bf.dpp.value),
        ("min", is_minimal_exact(s), bf.minimal.value),
        ("sensitive", is_sensitive_exact(s).sensitive, bf.sensitive.value),
        ("infinite", is_infinite_exact(s), bf.infinite.value),
    ]
    return [name for name, exact, brute in pairs if exact != brute]


def test_brute_force_agrees_on_exhaustive_small_graphs():
    for v in (1, 2, 3):
        for s in exhaustive_sft(v):
            assert not _agree(s), (v, sorted(s.edges))


def test_brute_force_agrees_on_random_graphs():
    for name, s in mixed_random_sfts(300, 6, seed=202):
        assert not _agree(s), (name, sorted(s.edges))


def test_eventual_sensitivity_equals_sensitivity_on_this_class():
    for name, s in mixed_random_sfts(200, 6, seed=303):
        assert is_eventually_sensitive_exact(s) == is_sensitive_exact(s).sensitive


def test_minimal_implies_transitive_dense_finite():
    for name, s in mixed_random_sfts(300, 6, seed=404):
        if is_minimal_exact(s):
            assert is_transitive_exact(s)
            assert has_dense_periodic_points_exact(s)
            assert not is_infinite_exact(s)


def test_divergent_pairs_for_short_words():
    for s in (FULL2, GOLDEN):
        n = len(s.alive)
        for length in range(1, 9):
            words = s.admissible_words(length)
            assert words
            for w in words:
                got = divergent_pair_for_word(s, w)
                assert got is not None, (s, w)
                x, y, t = got
                assert x.coordinates(length) == w and y.coordinates(length) == w
                assert t <= 8 + n
                assert s.distance(s.act((t,), x), s.act((t,), y)) == 1


def test_divergent_pair_absent_without_branching():
    x = CYCLE3.extend_word_to_point((0, 1))
    assert divergent_pair_for_word(CYCLE3, (0, 1)) is None


def test_divergent_pairs_on_random_sensitive_systems():
    for name, s in mixed_random_sfts(40, 5, seed=909):
        if not is_sensitive_exact(s).sensitive:
            continue
        n = len(s.alive)
        for length in (1, 3, 5):
            for w in s.admissible_words(length, cap=200) or []:
                x, y, t = divergent_pair_for_word(s, w)
                assert t <= length + n
                assert s.distance(s.act((t,), x), s.act((t,), y)) == 1


def test_periodic_points_catalog_cases():
    reps = periodic_points_up_to(FULL2, 2)
    cycles = sorted(p.cycle for p in reps)
    assert cycles == [(0,), (0, 1), (1,)]
    assert len(periodic_points_up_to(CYCLE3, 3)) == 1
    reps_pl = periodic_points_up_to(PATH_LOOP, 3)
    assert [p.cycle for p in reps_pl] == [(1,)]


def test_periodic_orbit_representatives_are_disjoint():
    rng = random.Random(77)
    for name, s in mixed_random_sfts(60, 5, seed=505):
        reps = periodic_points_up_to(s, 5)
        orbits = [s.shift_orbit(p) for p in reps]
        for i in range(len(orbits)):
            for j in range(i + 1, len(orbits)):
                assert not (orbits[i] & orbits[j]), name


def test_two_disjoint_orbits_search():
    pair = two_disjoint_periodic_orbits(FULL2, 8)
    assert pair is not None
    o1, o2 = (FULL2.shift_orbit(p) for p in pair)
    assert not (o1 & o2)
    assert two_disjoint_periodic_orbits(CYCLE3, 8) is None


def test_graph_analysis_fields():
    a = analyze(GOLDEN)
    assert a.branching == {0}
    assert a.reach_branching == {0, 1}
    assert a.cycle_vertices == {0, 1}
    assert len(a.sccs) == 1
    b = analyze(FAN)
    assert b.branching == {0}
    assert b.cycle_vertices == {1, 2}
    assert b.reach_branching == {0}
