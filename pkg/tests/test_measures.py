import math

import pytest

from src.measures.ball_mass import (
    EXACT, ball_mass, convolution_mass, mollified_mass, mollifier_value, monte_carlo_mass,
)
from src.measures.checks import exact_mass_check, sandwich_check, shift_invariance_check
from src.measures.dynamical import dynamical_ball_mass, monte_carlo_dynamical_mass
from src.measures.models import (
    BernoulliProduct, Mixture, NoisyPeriodization, PeriodicOrbit, build_model, orbit_separation,
)
from src.measures.stats import wilson_interval
from src.space.alphabet import AlphabetSpec, DomainError
from src.space.sequence import BilateralSequence


# =============================================================================
# MODELS
# =============================================================================

def test_build_model_from_specs(coin, periodic_eight, noisy):
    for model in (coin, periodic_eight, noisy):
        rebuilt = build_model(model.to_spec())
        assert type(rebuilt) is type(model)
        assert rebuilt.to_spec() == model.to_spec()


@pytest.mark.parametrize("spec", [
    {"kind": "bernoulli", "alphabet": {"kind": "finite", "size": 2}, "weights": [0.3, 0.3]},
    {"kind": "bernoulli", "alphabet": {"kind": "interval"}, "weights": [1.0]},
    {"kind": "periodic", "alphabet": {"kind": "finite", "size": 2}, "block": []},
    {"kind": "periodic", "alphabet": {"kind": "interval"}, "block": [0.2, 0.2], "distinct": True},
    {"kind": "noisy", "block": [0.5], "eta": 0.0},
    {"kind": "noisy", "block": [0.5], "eta": 0.1, "wrap": "wrap-around"},
    {"kind": "mixture", "weights": [1.0], "components": []},
    {"kind": "markov"},
])
def test_invalid_model_specs(spec):
    with pytest.raises(DomainError):
        build_model(spec)


def test_mixture_components_share_alphabet(coin, uniform):
    with pytest.raises(DomainError):
        Mixture([0.5, 0.5], [coin, uniform])


def test_entropies(coin, uniform, periodic_eight):
    assert coin.entropy() == pytest.approx(math.log(2))
    assert uniform.entropy() == math.inf
    assert periodic_eight.entropy() == 0.0


def test_orbit_separation(periodic_eight, binary):
    assert orbit_separation(periodic_eight) > 0.0
    assert orbit_separation(PeriodicOrbit(binary, [1])) == math.inf


# =============================================================================
# BALL MASSES
# =============================================================================

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_fair_coin_mass_at_dyadic_radius(coin, n):
    x = coin.sample_point(n)
    assert ball_mass(coin, x, 2.0 ** -n).mean == pytest.approx(2.0 ** (-2 * n), rel=1e-3)


def test_fair_coin_mass_below_half_radius(coin):
    x = coin.sample_point(3)
    assert ball_mass(coin, x, 0.49).mean <= 0.5


def test_whole_space_ball(coin, uniform):
    for model in (coin, uniform):
        estimate = ball_mass(model, model.sample_point(0), 3.0)
        assert estimate.mean == 1.0 and estimate.method == EXACT


def test_orbit_mass_counts_orbit_points(periodic_eight, interval):
    x = periodic_eight.base_point()
    estimate = ball_mass(periodic_eight, x, 1e-3)
    assert estimate.mean == pytest.approx(1 / 8)
    assert estimate.method == EXACT
    assert ball_mass(periodic_eight, x, 3.0).mean == 1.0

    off = ball_mass(periodic_eight, BilateralSequence.constant(interval, 0.0), 1e-3)
    assert off.mean == 0.0 and off.censored


def test_mixture_mass_is_weighted_sum(coin, binary):
    alternating = PeriodicOrbit(binary, [0, 1])
    mixture = Mixture([0.5, 0.5], [coin, alternating])
    x = alternating.base_point()
    # coin gives 2^-4, and of the two orbit points only x itself lies within 1/4
    assert ball_mass(mixture, x, 0.25).mean == pytest.approx(0.5 * 2.0 ** -4 + 0.5 * 0.5, rel=1e-3)


def test_uniform_mass_agrees_with_monte_carlo(uniform):
    x = uniform.sample_point(4)
    exact = ball_mass(uniform, x, 0.5, budget=20000, seed=1)
    sampled = monte_carlo_mass(uniform, x, 0.5, 1e-9, 20000, seed=2)
    assert exact.ci_low <= sampled.ci_high + 0.01
    assert exact.ci_high >= sampled.ci_low - 0.01


def test_convolution_bounds_are_ordered(noisy):
    x = noisy.sample_point(0)
    estimate = convolution_mass(noisy, x, 0.05)
    assert 0.0 <= estimate.ci_low <= estimate.mean <= estimate.ci_high <= 1.0


def test_masses_grow_with_radius(uniform):
    x = uniform.sample_point(5)
    masses = [ball_mass(uniform, x, eps, budget=4000).mean for eps in (0.05, 0.2, 0.8)]
    assert masses == sorted(masses)


def test_ball_mass_rejects_bad_inputs(coin, uniform):
    x = coin.sample_point(0)
    with pytest.raises(DomainError):
        ball_mass(coin, x, 0.0)
    with pytest.raises(DomainError):
        ball_mass(uniform, x, 0.25)


# =============================================================================
# MOLLIFIERS
# =============================================================================

def test_mollifier_values(binary):
    x = BilateralSequence.constant(binary, 0)
    assert mollifier_value(x, x, 0.1) == 1.0
    # single mismatch at the origin sits at distance 1/2
    assert mollifier_value(x, x.with_coordinates({0: 1}), 0.2) == 0.0
    assert mollifier_value(x, x.with_coordinates({0: 1}), 0.25) == pytest.approx(0.0)
    assert mollifier_value(x, x.with_coordinates({0: 1}), 0.4) == pytest.approx(0.75)


def test_mollified_mass_budget_floor(coin):
    with pytest.raises(DomainError):
        mollified_mass(coin, coin.sample_point(0), 0.25, budget=999)


def test_sandwich_holds_and_inversion_fails(coin):
    assert sandwich_check([coin], count=20, budget=2000, seed=0).passed
    assert not sandwich_check([coin], count=20, budget=2000, seed=0, inverted=True).passed


def test_shift_invariance(coin, uniform):
    assert shift_invariance_check([coin, uniform], count=10, budget=2000, seed=0).passed


def test_exact_mass_check():
    result = exact_mass_check((1, 2, 3))
    assert result.passed
    assert result.detail["relative_error"] <= 1e-3


# =============================================================================
# DYNAMICAL BALLS
# =============================================================================

def test_dynamical_ball_of_length_one_is_a_ball(coin):
    x = coin.sample_point(2)
    assert dynamical_ball_mass(coin, x, 1, 0.25).mean == ball_mass(coin, x, 0.25).mean


def test_dynamical_orbit_mass(periodic_eight):
    x = periodic_eight.base_point()
    assert dynamical_ball_mass(periodic_eight, x, 4, 1e-3).mean == pytest.approx(1 / 8)


def test_dynamical_mass_shrinks_with_length(coin):
    x = coin.sample_point(6)
    masses = [dynamical_ball_mass(coin, x, n, 0.3).mean for n in (1, 2, 3, 4)]
    assert all(a >= b for a, b in zip(masses, masses[1:]))
    assert masses[-1] > 0


def test_exact_dynamical_mass_matches_sampling(coin):
    x = coin.sample_point(8)
    exact = dynamical_ball_mass(coin, x, 3, 0.3)
    sampled = monte_carlo_dynamical_mass(coin, x, 3, 0.3, 1e-9, 20000, seed=3)
    assert sampled.ci_low - 0.01 <= exact.mean <= sampled.ci_high + 0.01


def test_dynamical_length_must_be_positive(coin):
    with pytest.raises(DomainError):
        dynamical_ball_mass(coin, coin.sample_point(0), 0, 0.25)


# =============================================================================
# INTERVALS
# =============================================================================

def test_wilson_interval():
    low, high = wilson_interval(0, 100)
    assert low == 0.0 and 0.0 < high < 0.05
    low, high = wilson_interval(50, 100)
    assert low < 0.5 < high
    assert wilson_interval(0, 0) == (0.0, 1.0)
