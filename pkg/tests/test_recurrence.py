import math
import statistics

import numpy as np
import pytest

from src.dimension.grid import ScaleGrid
from src.recurrence.checks import DEFAULT_SLACK, barreira_saussol_check, dynamical_return_check, galatolo_check
from src.recurrence.rates import DEFAULT_RATE_GRID, rates_from_times, recurrence_rates, waiting_rates
from src.recurrence.times import (
    MAX_CHUNK, dynamical_return_time, entrance_time, recurrence_entropy_profile, return_entropy_rate, return_time,
)
from src.space.alphabet import DomainError
from src.space.sequence import BilateralSequence
from src.space.shift import shift
from src.space.streams import BLOCK_SIZE


# =============================================================================
# TIMES
# =============================================================================

def test_periodic_point_returns_after_one_period(periodic_eight):
    x = periodic_eight.base_point()
    assert return_time(x, 1e-3, 100) == 8
    assert dynamical_return_time(x, 5, 1e-3, 100) == 8


def test_fixed_point_returns_at_once(interval):
    assert return_time(BilateralSequence.constant(interval, 0.4), 1e-6, 10) == 1


def test_entrance_into_shifted_orbit(periodic_eight):
    x = periodic_eight.base_point()
    assert entrance_time(x, shift(x, 3), 1e-3, 100) == 3


def test_censored_return(coin):
    assert return_time(coin.sample_point(0), 2.0 ** -20, 100) is None


def test_long_search_releases_passed_blocks(uniform):
    x = uniform.sample_point(3)
    assert return_time(x, 1e-6, 300_000) is None
    # origin blocks plus one window of at most MAX_CHUNK shifts
    assert x.cached_blocks <= MAX_CHUNK // BLOCK_SIZE + 8
    assert return_time(x, 1e-6, 300_000) is None


def test_released_blocks_regenerate_identically(coin):
    x = coin.sample_point(11)
    before = x.window(-20_000, 20)
    x.release_between(-20_000, -1)
    assert np.array_equal(x.window(-20_000, 20), before)
    assert return_time(x, 2.0 ** -8, 10 ** 5) == return_time(coin.sample_point(11), 2.0 ** -8, 10 ** 5)


def test_time_argument_checks(binary, interval):
    x = BilateralSequence.constant(binary, 0)
    with pytest.raises(DomainError):
        return_time(x, 0.1, 0)
    with pytest.raises(DomainError):
        return_time(x, 0.0, 10)
    with pytest.raises(DomainError):
        entrance_time(x, BilateralSequence.constant(interval, 0.0), 0.1, 10)
    with pytest.raises(DomainError):
        dynamical_return_time(x, 0, 0.1, 10)


def test_return_entropy_rate(periodic_eight, coin):
    x = periodic_eight.base_point()
    assert return_entropy_rate(x, 4, 1e-3, 100) == pytest.approx(math.log(8) / 4)
    assert return_entropy_rate(coin.sample_point(0), 30, 1e-3, 10) is None


def test_entropy_profile_marks_censored_rows(coin):
    rows = recurrence_entropy_profile(coin.sample_point(1), [1, 40], 2.0 ** -6, 64)
    assert [row["n"] for row in rows] == [1, 40]
    censored = rows[1]
    assert censored["censored"] and censored["time"] is None
    assert censored["rate"] == pytest.approx(math.log(64) / 40)


# =============================================================================
# RATES
# =============================================================================

def test_rates_from_times_with_censored_tail():
    grid = ScaleGrid(0.5, 0.5, 8, 1)
    times = [2 * 4 ** j for j in range(7)] + [None]
    estimate = rates_from_times(times, grid, 2 ** 20)
    assert estimate.rates[0] is None
    assert estimate.lower == pytest.approx(2.0)
    assert estimate.upper == pytest.approx(19 / 7)
    assert estimate.upper_is_bound and not estimate.fully_censored
    assert estimate.censored == [False] * 7 + [True]


def test_rates_when_reference_scale_is_censored():
    estimate = rates_from_times([None] * 8, ScaleGrid(0.5, 0.5, 8, 1), 100)
    assert estimate.fully_censored
    assert estimate.lower == math.inf


def test_periodic_recurrence_rates_vanish(periodic_eight):
    estimate = recurrence_rates(periodic_eight.base_point(), ScaleGrid(2.0 ** -4, 0.5, 8, 1), 64)
    assert estimate.times == [8] * 8
    assert estimate.lower == 0.0 and estimate.upper == 0.0


def test_waiting_rates_on_one_orbit(periodic_eight):
    x = periodic_eight.base_point()
    estimate = waiting_rates(x, shift(x, 5), ScaleGrid(2.0 ** -4, 0.5, 8, 1), 64)
    assert set(estimate.times) == {5}
    assert estimate.upper == 0.0


# =============================================================================
# INEQUALITY CHECKS
# =============================================================================

def test_return_times_bound_dynamical_returns(coin):
    points = [coin.sample_point(i) for i in range(4)]
    report = dynamical_return_check(points, [1, 2, 3], 0.25, 2 ** 14)
    assert report.passed
    assert report.holds == report.total


def test_lower_recurrence_rate_below_dimension(coin):
    report = barreira_saussol_check(coin, ScaleGrid(0.5, 0.5, 8, 1), 30, 2 ** 18, seed=0,
                                    slack=0.5, required_fraction=0.8)
    assert report.passed, report.to_dict()


@pytest.mark.slow
def test_waiting_rate_above_dimension(coin):
    report = galatolo_check(coin, DEFAULT_RATE_GRID, 20, 2 ** 22, seed=0, required_fraction=0.3)
    assert report.slack == DEFAULT_SLACK
    assert report.passed, report.to_dict()
    # waiting rates sit near the dimension 2, not above it
    inflated = galatolo_check(coin, DEFAULT_RATE_GRID, 20, 2 ** 22, seed=0, slack=-0.5, required_fraction=0.3)
    assert not inflated.passed, inflated.to_dict()


@pytest.mark.slow
def test_coin_lower_recurrence_rate_median(coin):
    lowers = [recurrence_rates(coin.sample_point(seed), DEFAULT_RATE_GRID, 10 ** 7).lower for seed in range(50)]
    assert 1.5 <= statistics.median(lowers) <= 2.5


def test_default_rate_grid_skips_scales_near_the_reference():
    assert DEFAULT_RATE_GRID.admissible[0] >= 3
    assert DEFAULT_RATE_GRID.admissible[-1] == DEFAULT_RATE_GRID.J - 1
