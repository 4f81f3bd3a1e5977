import numpy as np
import pytest

from src.space.alphabet import AlphabetSpec, DomainError
from src.space.checks import agreement_tail_check, lipschitz_check, metric_axioms_check, sample_pairs
from src.space.sequence import BilateralSequence
from src.space.shift import METRIC_BOUND, ShiftSystem, metric_depth, product_metric, shift, tail_bound
from src.space.streams import CounterStream, derive_seed, substream


def test_single_mismatch_at_origin(binary):
    x = BilateralSequence.constant(binary, 0)
    y = x.with_coordinates({0: 1})
    assert product_metric(x, y) == pytest.approx(0.5)


def test_distance_to_self_is_zero(interval):
    x = BilateralSequence.iid(interval, seed=7)
    assert product_metric(x, x) == 0.0


def test_metric_is_bounded_by_three(binary):
    x = BilateralSequence.constant(binary, 0)
    y = BilateralSequence.constant(binary, 1)
    # every coordinate contributes 1/2 and the weights sum to 3
    assert product_metric(x, y, tol=1e-9) == pytest.approx(1.5, abs=1e-8)
    assert product_metric(x, y) <= METRIC_BOUND


def test_metric_rejects_mismatched_alphabets(binary, interval):
    with pytest.raises(DomainError):
        product_metric(BilateralSequence.constant(binary, 0), BilateralSequence.constant(interval, 0.0))


def test_metric_depth_and_tail():
    depth = metric_depth(1e-9)
    assert tail_bound(depth) <= 1e-9 / 2
    with pytest.raises(DomainError):
        metric_depth(0.0)


def test_shift_moves_coordinates(interval):
    x = BilateralSequence.iid(interval, seed=3)
    y = shift(x, 1)
    for n in range(-5, 6):
        assert y.coordinate(n + 1) == x.coordinate(n)
    assert shift(y, -1).coordinate(4) == x.coordinate(4)


def test_shift_doubles_one_sided_mismatch(binary):
    x = BilateralSequence.constant(binary, 0)
    y = x.with_coordinates({-1: 1})
    assert product_metric(x, y) == pytest.approx(0.25)
    assert product_metric(shift(x), shift(y)) == pytest.approx(0.5)


def test_alphabet_validation():
    with pytest.raises(DomainError):
        AlphabetSpec.finite(0)
    with pytest.raises(DomainError):
        AlphabetSpec.finite(2).check_symbols([0, 2])
    with pytest.raises(DomainError):
        AlphabetSpec.interval().check_symbols([0.5, 1.5])
    with pytest.raises(DomainError):
        AlphabetSpec.from_spec({"kind": "circle"})
    assert AlphabetSpec.from_spec({"kind": "finite", "size": 3}) == AlphabetSpec.finite(3)
    assert AlphabetSpec.interval().perfect and not AlphabetSpec.finite(2).perfect


def test_from_block_is_periodic(binary):
    x = BilateralSequence.from_block(binary, [0, 1, 1])
    assert [x.coordinate(n) for n in range(6)] == [0, 1, 1, 0, 1, 1]
    assert x.coordinate(-1) == 1
    with pytest.raises(DomainError):
        BilateralSequence.from_block(binary, [])


def test_iid_sequences_are_reproducible(interval):
    a = BilateralSequence.iid(interval, seed=11).window(-5000, 5000)
    b = BilateralSequence.iid(interval, seed=11).window(-5000, 5000)
    c = BilateralSequence.iid(interval, seed=12).window(-5000, 5000)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_streams_are_keyed_by_path():
    assert derive_seed(0, "cell") == derive_seed(0, "cell")
    assert derive_seed(0, "x", 1) != derive_seed(0, "x", 2)
    assert derive_seed(0, "x", 1) != derive_seed(1, "x", 1)
    assert substream(5, "pairs").random() == substream(5, "pairs").random()
    stream = CounterStream(9)
    assert np.array_equal(stream.uniforms(-3), CounterStream(9).uniforms(-3))
    with pytest.raises(DomainError):
        derive_seed(-1)


@pytest.mark.parametrize("alphabet", [AlphabetSpec.finite(2), AlphabetSpec.finite(5), AlphabetSpec.interval()])
def test_metric_axioms_hold_on_sampled_pairs(alphabet):
    results = metric_axioms_check(alphabet, count=100, seed=0, tol=1e-9)
    assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]
    assert agreement_tail_check(alphabet, [1, 2, 4, 8, 16], seed=0, tol=1e-9).passed


def test_shift_is_two_lipschitz_and_tight(binary):
    system = ShiftSystem(binary, metric_tolerance=1e-9)
    results = lipschitz_check(system, sample_pairs(binary, 40, seed=1), tol=1e-9)
    assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]


def test_shift_system_rejects_foreign_points(binary, interval):
    system = ShiftSystem(binary)
    with pytest.raises(DomainError):
        system.distance(BilateralSequence.constant(interval, 0.2), BilateralSequence.constant(interval, 0.3))
    with pytest.raises(DomainError):
        ShiftSystem(binary, lipschitz_forward=0.5)
