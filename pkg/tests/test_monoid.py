import itertools
import random

import pytest

from semiflow.monoid import (
    ResidueClassSet,
    add,
    certify_syndetic_window,
    closed_box,
    is_syndetic,
    leq,
    submonoid_closure_contains,
)


def naive_member(a: ResidueClassSet, t) -> bool:
    # literal definition, recomputed from scratch
    if t in set(a.exceptional):
        return True
    if not all(p <= v for p, v in zip(a.preperiod, t)):
        return False
    r = tuple((v - p) % q for v, p, q in zip(t, a.preperiod, a.period))
    return r in set(a.residues)


EVENS = ResidueClassSet(1, (0,), (2,), {(0,)}, frozenset())
FINITE_ONLY = ResidueClassSet(1, (8,), (1,), frozenset(), {(0,), (3,), (7,)})
K2_EXAMPLE = ResidueClassSet(2, (1, 1), (1, 1), {(0, 0)}, {(0, 0)})


def test_evens_syndetic_with_small_compact():
    v = is_syndetic(EVENS)
    assert v.syndetic
    assert v.compact <= {(0,), (1,), (2,)}
    assert certify_syndetic_window(EVENS, v.compact, (100,))


def test_evens_window_certificates():
    assert certify_syndetic_window(EVENS, [(0,), (1,)], (100,))
    assert not certify_syndetic_window(EVENS, [(0,)], (100,))


def test_finite_set_is_not_syndetic():
    v = is_syndetic(FINITE_ONLY)
    assert not v.syndetic
    assert v.compact is None


def test_rank2_example_certificates():
    v = is_syndetic(K2_EXAMPLE)
    assert v.syndetic
    # windowed brute force over [0,10]^2 for both compacts
    assert certify_syndetic_window(K2_EXAMPLE, v.compact, (10, 10))
    assert certify_syndetic_window(K2_EXAMPLE, [(1, 1)], (10, 10))


def test_membership_matches_naive_enumeration():
    rng = random.Random(7)
    for _ in range(50):
        k = rng.choice((1, 2))
        p = tuple(rng.randrange(3) for _ in range(k))
        q = tuple(1 + rng.randrange(3) for _ in range(k))
        residues = frozenset(
            r for r in itertools.product(*(range(x) for x in q)) if rng.random() < 0.4
        )
        exceptional = frozenset(
            e
            for e in itertools.product(*(range(x + 2) for x in p))
            if not leq(p, e) and rng.random() < 0.3
        )
        a = ResidueClassSet(k, p, q, residues, exceptional)
        hi = tuple(pi + 3 * qi for pi, qi in zip(p, q))
        for t in closed_box(hi):
            assert (t in a) == naive_member(a, t)


def test_syndetic_certificate_works_on_random_sets():
    rng = random.Random(19)
    for _ in range(30):
        k = rng.choice((1, 2))
        p = tuple(rng.randrange(4) for _ in range(k))
        q = tuple(1 + rng.randrange(4) for _ in range(k))
        residues = frozenset(
            {tuple(rng.randrange(x) for x in q)}
        )
        a = ResidueClassSet(k, p, q, residues, frozenset())
        v = is_syndetic(a)
        assert v.syndetic
        window = tuple(7 + rng.randrange(6) for _ in range(k))
        assert certify_syndetic_window(a, v.compact, window)


def test_non_syndetic_sets_have_gaps_past_every_compact():
    rng = random.Random(23)
    for _ in range(20):
        k = rng.choice((1, 2))
        members = frozenset(
            tuple(rng.randrange(5) for _ in range(k)) for _ in range(rng.randrange(4))
        )
        p = tuple(6 for _ in range(k))
        a = ResidueClassSet(k, p, (1,) * k, frozenset(), frozenset(m for m in members if not leq(p, m)))
        compact = [tuple(rng.randrange(4) for _ in range(k)) for _ in range(3)] or [(0,) * k]
        max_a = max((max(m) for m in a.exceptional), default=0)
        max_k = max(max(u) for u in compact)
        t = ((max_a + max_k + 1),) * k
        assert all(add(t, u) not in a for u in compact)


def test_submonoid_closure_examples():
    assert submonoid_closure_contains([(2,), (3,)], (7,), 5)  # 2+2+3
    assert not submonoid_closure_contains([(2,)], (5,), 10)
    assert submonoid_closure_contains([(1, 1), (1, 2)], (2, 3), 4)
    assert submonoid_closure_contains([(2,)], (0,), 0)  # empty sum


def test_submonoid_closure_against_exhaustive_sums():
    rng = random.Random(3)
    gens = [(1, 1), (1, 2), (3, 0)]
    bound = 4
    reachable = set()
    for count in range(bound + 1):
        for combo in itertools.product(gens, repeat=count):
            s = (0, 0)
            for g in combo:
                s = add(s, g)
            reachable.add(s)
    for _ in range(40):
        t = (rng.randrange(8), rng.randrange(8))
        assert submonoid_closure_contains(gens, t, bound) == (t in reachable)


def test_validation_rejects_bad_shapes():
    with pytest.raises(ValueError):
        ResidueClassSet(1, (0,), (0,), frozenset(), frozenset())  # zero period
    with pytest.raises(ValueError):
        ResidueClassSet(1, (0,), (2,), {(2,)}, frozenset())  # residue not reduced
    with pytest.raises(ValueError):
        ResidueClassSet(1, (1,), (2,), frozenset(), {(3,)})  # exceptional past corner


def test_equivalence_is_denotational():
    a = ResidueClassSet(1, (0,), (2,), {(0,)}, frozenset())
    b = ResidueClassSet(1, (0,), (4,), {(0,), (2,)}, frozenset())
    c = ResidueClassSet(1, (0,), (4,), {(0,), (3,)}, frozenset())
    assert a.equivalent(b)
    assert not a.equivalent(c)
