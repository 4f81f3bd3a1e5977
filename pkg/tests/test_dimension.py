import math

import pytest

from src.dimension.grid import ScaleGrid
from src.dimension.local import anchored_quotients, local_dims, local_entropy, measure_dims, trimmed_bounds
from src.space.alphabet import DomainError
from src.space.sequence import BilateralSequence


@pytest.mark.parametrize("kwargs", [
    {"eps0": 1.0}, {"eps0": 0.0}, {"q": 1.0}, {"q": 0.0}, {"J": 7}, {"s_index": 12}, {"s_index": -1},
])
def test_grid_validation(kwargs):
    with pytest.raises(DomainError):
        ScaleGrid(**kwargs)


def test_grid_parsing():
    grid = ScaleGrid.from_string("0.25, 0.5, 10, 2")
    assert grid == ScaleGrid(0.25, 0.5, 10, 2)
    assert ScaleGrid.from_spec(grid.to_spec()) == grid
    assert grid.admissible == list(range(2, 10))
    assert grid.finest == pytest.approx(0.25 * 0.5 ** 9)
    assert grid.index_of(0.25 * 0.5 ** 3) == 3
    assert grid.scaled(0.5).eps0 == pytest.approx(0.125)
    with pytest.raises(DomainError):
        ScaleGrid.from_string("0.25,0.5,10")
    with pytest.raises(DomainError):
        ScaleGrid.from_string("0.25,0.5,ten,1")
    with pytest.raises(DomainError):
        ScaleGrid.from_spec({"eps0": 0.25, "ratio": 0.5})


def test_reference_index_never_enters_window():
    assert ScaleGrid(s_index=0).admissible[0] == 1


def test_anchored_quotients():
    scales = [0.5, 0.25, 0.125]
    logs = [math.log(0.25), math.log(0.0625), -math.inf]
    quotients = anchored_quotients(logs, scales)
    assert math.isnan(quotients[0])
    assert quotients[1] == pytest.approx(2.0)
    assert quotients[2] == math.inf


def test_trimmed_bounds():
    values = list(range(21))
    assert trimmed_bounds(values, 0.05) == (1, 19)
    assert trimmed_bounds(values, 0.0) == (0, 20)
    assert trimmed_bounds([1.0, math.inf, 2.0], 0.0) == (1.0, math.inf)


def test_fair_coin_local_dimension_is_two(coin):
    estimate = local_dims(coin, coin.sample_point(1), ScaleGrid(0.25, 0.5, 8, 1))
    assert not estimate.censored
    assert estimate.lower == pytest.approx(2.0, abs=0.01)
    assert estimate.upper == pytest.approx(2.0, abs=0.01)


def test_periodic_local_dimension_is_zero(periodic_eight):
    estimate = local_dims(periodic_eight, periodic_eight.base_point(), ScaleGrid(2.0 ** -4, 0.5, 8, 1))
    assert estimate.lower == 0.0 and estimate.upper == 0.0


def test_off_support_point(periodic_eight, interval):
    estimate = local_dims(periodic_eight, BilateralSequence.constant(interval, 0.0), ScaleGrid(2.0 ** -4, 0.5, 8, 1))
    assert estimate.off_support and estimate.censored
    assert estimate.lower == math.inf


def test_measure_dims_of_periodic_orbit(periodic_eight):
    report = measure_dims(periodic_eight, 30, ScaleGrid(2.0 ** -4, 0.5, 10, 1), seed=4)
    assert report.dimH_plus <= 0.05 and report.dimP_plus <= 0.05
    assert not report.unreliable
    assert len(report.seeds) == 30


def test_measure_dims_of_fair_coin(coin):
    report = measure_dims(coin, 30, ScaleGrid(0.25, 0.5, 8, 1), seed=2)
    for value in (report.dimH_minus, report.dimH_plus, report.dimP_minus, report.dimP_plus):
        assert value == pytest.approx(2.0, abs=0.05)


def test_measure_dims_is_independent_of_worker_count(periodic_eight):
    grid = ScaleGrid(2.0 ** -4, 0.5, 8, 1)
    serial = measure_dims(periodic_eight, 30, grid, seed=9, workers=1)
    pooled = measure_dims(periodic_eight, 30, grid, seed=9, workers=2)
    assert serial.to_dict() == pooled.to_dict()
    assert [s.to_dict() for s in serial.samples] == [s.to_dict() for s in pooled.samples]


def test_measure_dims_argument_checks(coin):
    with pytest.raises(DomainError):
        measure_dims(coin, 10, ScaleGrid())
    with pytest.raises(DomainError):
        measure_dims(coin, 30, ScaleGrid(), trim=0.5)


def test_local_entropy_of_periodic_orbit(periodic_eight):
    assert local_entropy(periodic_eight, periodic_eight.base_point(), 4, 1e-3) == pytest.approx(math.log(8) / 4)


def test_local_entropy_of_fair_coin_is_positive(coin):
    value = local_entropy(coin, coin.sample_point(0), 6, 0.3)
    assert 0.0 < value < math.inf
