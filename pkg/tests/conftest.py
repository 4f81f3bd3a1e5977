import pytest

from src.measures.models import BernoulliProduct, NoisyPeriodization, PeriodicOrbit
from src.space.alphabet import AlphabetSpec

EIGHT_BLOCK = [0.05, 0.18, 0.31, 0.44, 0.57, 0.7, 0.83, 0.96]


@pytest.fixture
def binary():
    return AlphabetSpec.finite(2)


@pytest.fixture
def interval():
    return AlphabetSpec.interval()


@pytest.fixture
def coin(binary):
    """Bernoulli(1/2, 1/2) on {0, 1}"""
    return BernoulliProduct(binary, [0.5, 0.5])


@pytest.fixture
def uniform(interval):
    return BernoulliProduct(interval)


@pytest.fixture
def periodic_eight(interval):
    return PeriodicOrbit(interval, EIGHT_BLOCK, distinct=True)


@pytest.fixture
def noisy():
    return NoisyPeriodization([0.1, 0.5, 0.9], 0.01)
