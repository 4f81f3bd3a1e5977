"""
Genericity - periodic approximations of measures and weak-topology distances between models
"""
import logging
from typing import Optional

import numpy as np

from ..measures.models import BernoulliProduct, MeasureModel, NoisyPeriodization, PeriodicOrbit
from ..measures.stats import mean_interval
from ..schemas.results import WeakDistance
from ..space.alphabet import DomainError
from ..space.streams import derive_seed, substream
from .test_functions import TestFunctionFamily, default_family

logger = logging.getLogger(__name__)

RESAMPLE_LIMIT = 100
MIN_SPACING = 1e-9
WEAK_CHUNK = 8192


def _minimal_period(block: np.ndarray) -> int:
    s = block.size
    for p in range(1, s):
        if s % p == 0 and np.array_equal(block, np.roll(block, p)):
            return p
    return s


def _spread(block: np.ndarray) -> np.ndarray:
    """Separate equal reals by multiples of MIN_SPACING, staying inside [0,1]"""
    block = block.copy()
    while np.unique(block).size != block.size:
        order = np.argsort(block, kind="stable")
        for a, b in zip(order[:-1], order[1:]):
            if block[b] <= block[a]:
                block[b] = block[a] + MIN_SPACING
        block = np.where(block > 1.0, block - 2 * MIN_SPACING * block.size, block)
        block = np.clip(block, 0.0, 1.0)
    return block


def _atomless(model: MeasureModel) -> bool:
    return isinstance(model, NoisyPeriodization) or (isinstance(model, BernoulliProduct) and model.uniform)


def periodize(model: MeasureModel, s: int, seed: int) -> PeriodicOrbit:
    """Periodic measure whose block is s consecutive coordinates of a model-distributed point"""
    if s < 1:
        raise DomainError(f"Period must be >= 1, got {s}")
    alphabet = model.alphabet

    def draw(attempt: int) -> np.ndarray:
        return model.sample_point(derive_seed(seed, "periodize", attempt)).window(0, s - 1)

    block = draw(0)
    if alphabet.is_finite:
        if s > alphabet.size:
            logger.warning("Period %d exceeds alphabet size %d; block symbols cannot be distinct", s, alphabet.size)
        block = block[:_minimal_period(block)]
        return PeriodicOrbit(alphabet, block, distinct=False)

    attempt = 0
    while np.unique(block).size != block.size and attempt < RESAMPLE_LIMIT and _atomless(model):
        attempt += 1
        block = draw(attempt)
    if np.unique(block).size != block.size:
        logger.debug("Spreading %d colliding symbols after %d resamples", block.size - np.unique(block).size, attempt)
        block = _spread(block)
    return PeriodicOrbit(alphabet, block, distinct=True)


def weak_distance(mu: MeasureModel, nu: MeasureModel, family: Optional[TestFunctionFamily] = None,
                  budget: int = 20_000, seed: int = 0) -> WeakDistance:
    """max_i |int f_i dnu - int f_i dmu| with both models driven by the same random numbers"""
    if mu.alphabet != nu.alphabet:
        raise DomainError(f"Mismatched alphabets: {mu.alphabet} vs {nu.alphabet}")
    family = family or default_family()
    lo, hi = family.window
    rng_mu = substream(seed, "weak-distance")
    rng_nu = substream(seed, "weak-distance")
    chunks = []
    for start in range(0, budget, WEAK_CHUNK):
        count = min(WEAK_CHUNK, budget - start)
        values_mu = family.evaluate(mu.alphabet, mu.sample_window(rng_mu, count, lo, hi))
        values_nu = family.evaluate(nu.alphabet, nu.sample_window(rng_nu, count, lo, hi))
        chunks.append(values_nu - values_mu)
    differences = np.vstack(chunks)

    per_function, highs, lows = [], [], []
    for name, column in zip(family.names, differences.T):
        mean, low, high = mean_interval(column)
        per_function.append((name, mean))
        highs.append(max(abs(low), abs(high)))
        lows.append(0.0 if low <= 0.0 <= high else min(abs(low), abs(high)))
    value = max(abs(mean) for _, mean in per_function)
    return WeakDistance(value, max(lows), max(highs), per_function, budget)
