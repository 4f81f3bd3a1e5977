"""
Dynamical balls - mu(B(x, n, eps)) for B(x,n,eps) = {z : d(T^i z, T^i x) <= eps, 0 <= i < n}
"""
import logging
import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import logsumexp

from ..schemas.results import BallMassEstimate
from ..space.alphabet import DomainError
from ..space.sequence import BilateralSequence
from ..space.shift import METRIC_BOUND, contributions, coordinate_weights, metric_depth, tail_bound
from ..space.streams import derive_seed, substream
from .ball_mass import (
    BRANCH_AND_BOUND, DEFAULT_BUDGET, DEFAULT_TOLERANCE, EXACT, MC_CHUNK, MONTE_CARLO,
    _certain, _check_inputs, _log, ball_mass,
)
from .models import BernoulliProduct, MeasureModel, Mixture, PeriodicOrbit, orbit_windows
from .stats import wilson_interval

logger = logging.getLogger(__name__)

FLANK_TERMS = 12


def _orbit_distances(alphabet, center: np.ndarray, windows: np.ndarray, n: int, depth: int) -> np.ndarray:
    """max_{i<n} d(T^i z, T^i x) for each row z, windows covering -depth-(n-1)..depth"""
    _, weights = coordinate_weights(depth)
    terms = contributions(alphabet, windows, center[None, :])
    # slice r starts at -depth-(n-1)+r, which is where T^i reads from when r = n-1-i
    per_shift = sliding_window_view(terms, 2 * depth + 1, axis=1) @ weights
    return per_shift.max(axis=1)


def _core_radius(eps: float) -> int:
    """Largest c with 2^-(c+1) > eps"""
    c = 0
    while 2.0 ** -(c + 2) > eps:
        c += 1
    return c


def _flank_pmf(mismatch: np.ndarray) -> np.ndarray:
    """Law of sum_k 2^(K-k) b_k with b_k ~ Bernoulli(mismatch[k-1]), on 0 .. 2^K - 1"""
    size = 1 << FLANK_TERMS
    pmf = np.zeros(size)
    pmf[0] = 1.0
    for k, q in enumerate(mismatch, start=1):
        step = 1 << (FLANK_TERMS - k)
        moved = np.zeros(size)
        moved[step:] = pmf[:-step]
        pmf = (1.0 - q) * pmf + q * moved
    return pmf


def _flank_probability(left: np.ndarray, right: np.ndarray, budget: float, contraction: float) -> float:
    """P(R + c L <= budget and L + c R <= budget) with L, R on the unit grid"""
    if budget < 0:
        return 0.0
    values = np.arange(left.size, dtype=np.float64)
    bound = np.minimum(budget - contraction * values, (budget - values) / contraction)
    valid = bound >= 0
    index = np.minimum(np.floor(bound[valid] + 1e-9).astype(np.int64), right.size - 1)
    return float((left[valid] * np.cumsum(right)[index]).sum())


def bernoulli_dynamical_mass(model: BernoulliProduct, x: BilateralSequence, n: int, eps: float) -> BallMassEstimate:
    """Exact dynamical-ball mass for a finite product measure with eps < 1/2.

    Every coordinate whose single mismatch already breaks some constraint is forced to agree.
    The remaining coordinates form two flanks with contributions L and R, and constraint i
    reads 2^-(n-1-i) L + 2^-i R <= eps, which is tightest at i = 0 and i = n-1.
    """
    c = _core_radius(eps)
    p = model.weights
    core = x.window(-(n - 1) - c, c)
    log_core = float(np.log(p[core]).sum()) if np.all(p[core] > 0) else -math.inf
    if log_core == -math.inf:
        return BallMassEstimate(0.0, 0.0, 0.0, BRANCH_AND_BOUND, 0, -math.inf, True, 0.0)

    right_symbols = x.window(c + 1, c + FLANK_TERMS)
    left_symbols = x.window(-(n - 1) - c - FLANK_TERMS, -(n - 1) - c - 1)[::-1]
    right = _flank_pmf(1.0 - p[right_symbols])
    left = _flank_pmf(1.0 - p[left_symbols])

    unit = 2.0 ** -(c + 1 + FLANK_TERMS)
    contraction = 2.0 ** -(n - 1)
    budget = eps / unit
    upper = _flank_probability(left, right, budget, contraction)
    # truncated flank tails add at most one unit to each of L and R
    lower = _flank_probability(left, right, budget - (1.0 + contraction), contraction)
    log_mass = log_core + _log(lower)
    scale = math.exp(log_core)
    logger.debug("Dynamical mass n=%d eps=%.3g core=%d log_mass=%.4f", n, eps, core.size, log_mass)
    return BallMassEstimate(scale * lower, scale * lower, scale * upper, BRANCH_AND_BOUND, 0, log_mass,
                            log_mass == -math.inf, scale * (upper - lower))


def orbit_dynamical_mass(model: PeriodicOrbit, x: BilateralSequence, n: int, eps: float, tol: float) -> BallMassEstimate:
    depth = metric_depth(tol)
    lo, hi = -depth - (n - 1), depth
    distances = _orbit_distances(model.alphabet, x.window(lo, hi), orbit_windows(model, lo, hi), n, depth)
    return _certain(int(np.count_nonzero(distances <= eps)) / model.period, EXACT, tail_bound(depth))


def monte_carlo_dynamical_mass(model: MeasureModel, x: BilateralSequence, n: int, eps: float, tol: float,
                               budget: int, seed: int) -> BallMassEstimate:
    depth = metric_depth(min(tol, eps / 100))
    lo, hi = -depth - (n - 1), depth
    center = x.window(lo, hi)
    rng = substream(seed, "dynamical-mass")
    hits = 0
    for start in range(0, budget, MC_CHUNK):
        count = min(MC_CHUNK, budget - start)
        windows = model.sample_window(rng, count, lo, hi)
        hits += int(np.count_nonzero(_orbit_distances(model.alphabet, center, windows, n, depth) <= eps))
    mean = hits / budget
    low, high = wilson_interval(hits, budget)
    return BallMassEstimate(mean, low, high, MONTE_CARLO, budget, _log(mean), hits == 0, tail_bound(depth))


def dynamical_ball_mass(model: MeasureModel, x: BilateralSequence, n: int, eps: float,
                        tol: float = DEFAULT_TOLERANCE, budget: int = DEFAULT_BUDGET,
                        seed: int = 0) -> BallMassEstimate:
    """mu(B(x, n, eps)), closed in every constraint"""
    if n < 1:
        raise DomainError(f"Dynamical ball length must be >= 1, got {n}")
    _check_inputs(model, x, eps)
    if n == 1:
        return ball_mass(model, x, eps, tol, budget, seed)
    if eps >= METRIC_BOUND:
        return _certain(1.0, EXACT)
    if isinstance(model, Mixture):
        parts = [(float(w), dynamical_ball_mass(c, x, n, eps, tol, budget, derive_seed(seed, "component", i)))
                 for i, (w, c) in enumerate(zip(model.weights, model.components)) if w > 0]
        log_mass = float(logsumexp([math.log(w) + e.log_mass for w, e in parts]))
        methods = sorted({e.method for _, e in parts})
        return BallMassEstimate(
            sum(w * e.mean for w, e in parts), sum(w * e.ci_low for w, e in parts),
            sum(w * e.ci_high for w, e in parts), methods[0] if len(methods) == 1 else "mixture",
            sum(e.samples for _, e in parts), log_mass, log_mass == -math.inf,
            sum(w * e.truncation_error for w, e in parts))
    if isinstance(model, PeriodicOrbit):
        return orbit_dynamical_mass(model, x, n, eps, tol)
    if isinstance(model, BernoulliProduct) and not model.uniform and eps < 0.5:
        return bernoulli_dynamical_mass(model, x, n, eps)
    return monte_carlo_dynamical_mass(model, x, n, eps, tol, budget, seed)
