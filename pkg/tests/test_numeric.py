import math
import random

import pytest

from semiflow.numeric import NumericCascade, commuting_mult, doubling, logistic, rotation, tent


def test_family_step_values():
    assert doubling().step(0, 0.3) == pytest.approx(0.6)
    assert doubling().step(0, 0.7) == pytest.approx(0.4)
    assert tent(2.0).step(0, 0.3) == pytest.approx(0.6)
    assert tent(2.0).step(0, 0.7) == pytest.approx(0.6)
    assert logistic(4.0).step(0, 0.3) == pytest.approx(0.84)
    assert rotation(0.25).step(0, 0.9) == pytest.approx(0.15)


def test_circle_distance_wraps():
    d = doubling()
    assert d.distance(0.05, 0.95) == pytest.approx(0.1)
    assert d.distance(0.2, 0.6) == pytest.approx(0.4)
    assert tent(2.0).distance(0.1, 0.9) == pytest.approx(0.8)  # interval, no wrap


def test_commuting_mult_generators_commute():
    s = commuting_mult(2, 3)
    rng = random.Random(3)
    for _ in range(200):
        x = rng.random()
        ab = s.step(0, s.step(1, x))
        ba = s.step(1, s.step(0, x))
        assert abs(ab - ba) < 1e-9


def test_rotation_acts_as_isometry():
    r = rotation((math.sqrt(5.0) - 1.0) / 2.0)
    rng = random.Random(9)
    for _ in range(1000):
        x, y = rng.random(), rng.random()
        t = (rng.randrange(1000),)
        assert abs(r.distance(r.act(t, x), r.act(t, y)) - r.distance(x, y)) <= 1e-12


def test_exact_orbit_supported_families():
    assert doubling().supports_exact_orbit()
    assert tent(2.0).supports_exact_orbit()
    assert not tent(1.5).supports_exact_orbit()
    assert not logistic(4.0).supports_exact_orbit()
    from fractions import Fraction

    assert doubling().exact_step(Fraction(3, 7)) == Fraction(6, 7)
    assert tent(2.0).exact_step(Fraction(5, 7)) == Fraction(4, 7)


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        NumericCascade("henon", (1.4, 0.3))
    with pytest.raises(ValueError):
        NumericCascade("tent", ())


def test_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        doubling().act((1, 1), 0.3)
    assert commuting_mult(2, 3).act((1, 1), 0.1) == pytest.approx(0.6)
