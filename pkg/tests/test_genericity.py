import logging

import numpy as np
import pytest

from src.lab.genericity import periodize, weak_distance
from src.lab.test_functions import CoordinateMoment, LaggedProduct, TestFunctionFamily, WindowMollifier, default_family
from src.measures.models import NoisyPeriodization, PeriodicOrbit
from src.space.alphabet import AlphabetSpec, DomainError

NOISE_BLOCK = [0.1, 0.5, 0.9]


# =============================================================================
# PERIODIZATION
# =============================================================================

def test_period_one_is_a_fixed_point(uniform):
    orbit = periodize(uniform, 1, seed=0)
    assert orbit.period == 1
    assert orbit.distinct


def test_continuous_blocks_are_distinct(uniform):
    orbit = periodize(uniform, 16, seed=3)
    assert orbit.period == 16 and orbit.distinct
    assert np.unique(orbit.block).size == 16
    assert np.all((orbit.block >= 0.0) & (orbit.block <= 1.0))


def test_periodize_is_reproducible(uniform):
    assert np.array_equal(periodize(uniform, 8, seed=5).block, periodize(uniform, 8, seed=5).block)
    assert not np.array_equal(periodize(uniform, 8, seed=5).block, periodize(uniform, 8, seed=6).block)


def test_finite_alphabet_blocks_repeat(coin, caplog):
    with caplog.at_level(logging.WARNING, logger="src.lab.genericity"):
        orbit = periodize(coin, 8, seed=1)
    assert not orbit.distinct
    assert 8 % orbit.period == 0
    assert "exceeds alphabet size" in caplog.text


def test_periodize_rejects_nonpositive_period(coin):
    with pytest.raises(DomainError):
        periodize(coin, 0, seed=0)


def test_atoms_are_spread_apart(interval):
    atom = PeriodicOrbit(interval, [0.5])
    orbit = periodize(atom, 4, seed=0)
    assert orbit.distinct and orbit.period == 4


# =============================================================================
# WEAK DISTANCES
# =============================================================================

def test_distance_to_itself_is_zero(uniform):
    distance = weak_distance(uniform, uniform, budget=4000, seed=0)
    assert distance.value == 0.0
    assert distance.ci_high == 0.0
    assert distance.in_neighborhood(1e-9)


def test_fixed_points_differ_by_their_gap(interval):
    family = TestFunctionFamily((CoordinateMoment(1, 0),))
    a = PeriodicOrbit(interval, [0.3])
    b = PeriodicOrbit(interval, [0.7])
    distance = weak_distance(a, b, family, budget=1000, seed=0)
    assert distance.value == pytest.approx(0.4, abs=1e-12)
    assert distance.per_function[0][0] == "moment1@0"


def test_noise_distance_shrinks_with_width():
    base = PeriodicOrbit(AlphabetSpec.interval(), NOISE_BLOCK, distinct=True)
    values = [weak_distance(base, NoisyPeriodization(NOISE_BLOCK, eta), budget=4000, seed=2).value
              for eta in (0.1, 0.01, 0.001)]
    assert values[0] > values[1] > values[2]


def test_periodizations_approach_the_measure(uniform):
    coarse = weak_distance(uniform, periodize(uniform, 2, seed=0), budget=8000, seed=1)
    assert coarse.value > 0.0
    assert coarse.ci_low <= coarse.value <= coarse.ci_high


def test_weak_distance_requires_one_alphabet(coin, uniform):
    with pytest.raises(DomainError):
        weak_distance(coin, uniform, budget=1000)


# =============================================================================
# TEST FUNCTIONS
# =============================================================================

def test_default_family_is_pinned():
    family = default_family()
    assert family.version == "v1"
    assert len(family.names) == 8
    assert family.window == (-1, 2)
    with pytest.raises(DomainError):
        default_family("v2")
    with pytest.raises(DomainError):
        TestFunctionFamily(())


def test_family_values_stay_bounded(uniform, coin):
    family = default_family()
    lo, hi = family.window
    rng = np.random.default_rng(0)
    for model in (uniform, coin):
        values = family.evaluate(model.alphabet, model.sample_window(rng, 500, lo, hi))
        assert values.shape == (500, 8)
        assert np.all(np.abs(values) <= 1.0 + 1e-12)


def test_test_function_values():
    coords = np.array([[0.5, 0.5, 0.5, 1.0]])
    assert CoordinateMoment(2).evaluate(coords, lo=-1)[0] == pytest.approx(0.25)
    assert LaggedProduct(2).evaluate(coords, lo=-1)[0] == pytest.approx(0.5)
    # window centred on 0.5 sees distance 0 and saturates at 1
    assert WindowMollifier(0.5).evaluate(coords[:, :3], lo=-1)[0] == pytest.approx(1.0)
