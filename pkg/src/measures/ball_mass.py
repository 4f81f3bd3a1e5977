"""
Ball masses - mu(B(x, eps)) by orbit counting, branch-and-bound, convolution or Monte Carlo
"""
import logging
import math
from itertools import accumulate
from typing import Iterator, List, Tuple

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import logsumexp

from ..schemas.results import BallMassEstimate
from ..space.alphabet import DomainError
from ..space.sequence import BilateralSequence
from ..space.shift import METRIC_BOUND, coordinate_weights, metric_depth, product_metric, tail_bound, window_distances
from ..space.streams import derive_seed, substream
from .models import BernoulliProduct, MeasureModel, Mixture, NoisyPeriodization, PeriodicOrbit, orbit_windows
from .stats import wilson_interval

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000
MIN_BUDGET = 1000
DEFAULT_TOLERANCE = 1e-9
CONVOLUTION_BINS = 4096
MAX_EXACT_DEPTH = 60
MC_CHUNK = 4096

EXACT = "exact"
BRANCH_AND_BOUND = "branch-and-bound"
CONVOLUTION = "convolution"
MONTE_CARLO = "monte-carlo"


def _log(value: float) -> float:
    return math.log(value) if value > 0 else -math.inf


def _check_inputs(model: MeasureModel, x: BilateralSequence, eps: float):
    if not eps > 0:
        raise DomainError(f"Radius must be positive, got {eps}")
    if x.alphabet != model.alphabet:
        raise DomainError(f"Point over {x.alphabet} used with a model over {model.alphabet}")


def _certain(mass: float, method: str, truncation_error: float = 0.0) -> BallMassEstimate:
    return BallMassEstimate(mass, mass, mass, method, 0, _log(mass), mass <= 0, truncation_error)


# =============================================================================
# MOLLIFIED MASSES
# =============================================================================

def mollify(distances, eps: float) -> np.ndarray:
    """f^eps: 1 up to eps, linear down to 0 at 2 eps"""
    return np.clip(2.0 - np.asarray(distances, dtype=np.float64) / eps, 0.0, 1.0)


def mollifier_value(x: BilateralSequence, y: BilateralSequence, eps: float, tol: float = None) -> float:
    if not eps > 0:
        raise DomainError(f"Radius must be positive, got {eps}")
    tol = eps / 100 if tol is None else min(tol, eps / 100)
    return float(mollify(product_metric(x, y, tol), eps))


def _sampled_distances(model: MeasureModel, x: BilateralSequence, depth: int, budget: int,
                       rng: np.random.Generator) -> Iterator[np.ndarray]:
    _, weights = coordinate_weights(depth)
    center = x.window(-depth, depth)
    for start in range(0, budget, MC_CHUNK):
        count = min(MC_CHUNK, budget - start)
        windows = model.sample_window(rng, count, -depth, depth)
        yield window_distances(model.alphabet, center, windows, weights)


def mollified_mass(model: MeasureModel, x: BilateralSequence, eps: float, budget: int = DEFAULT_BUDGET,
                   seed: int = 0, tol: float = None) -> BallMassEstimate:
    """Monte Carlo f_{x,eps}(mu) = int f^eps_x dmu"""
    _check_inputs(model, x, eps)
    if budget < MIN_BUDGET:
        raise DomainError(f"Budget must be at least {MIN_BUDGET}, got {budget}")
    depth = metric_depth(eps / 100 if tol is None else min(tol, eps / 100))
    rng = substream(seed, "mollified-mass")
    total = sum(float(mollify(d, eps).sum()) for d in _sampled_distances(model, x, depth, budget, rng))
    mean = total / budget
    low, high = wilson_interval(total, budget)
    return BallMassEstimate(mean, min(low, mean), max(high, mean), MONTE_CARLO, budget, _log(mean),
                            mean <= 0, tail_bound(depth) / eps)


# =============================================================================
# EXACT PATHS
# =============================================================================

def orbit_mass(model: PeriodicOrbit, x: BilateralSequence, eps: float, tol: float) -> BallMassEstimate:
    """Count orbit points within eps, each carrying weight 1/k"""
    depth = metric_depth(tol)
    _, weights = coordinate_weights(depth)
    distances = window_distances(model.alphabet, x.window(-depth, depth), orbit_windows(model, -depth, depth), weights)
    hits = int(np.count_nonzero(distances <= eps))
    return _certain(hits / model.period, EXACT, tail_bound(depth))


def _exact_depth(eps: float, tol: float) -> int:
    return min(MAX_EXACT_DEPTH, max(metric_depth(tol), math.ceil(-math.log2(min(eps, 1.0))) + 24))


def _signed_order(depth: int) -> List[int]:
    """0, -1, 1, -2, 2, ... : positions by decreasing weight"""
    order = [0]
    for k in range(1, depth + 1):
        order.extend((-k, k))
    return order


def branch_and_bound_mass(model: BernoulliProduct, x: BilateralSequence, eps: float, tol: float) -> BallMassEstimate:
    """Exact mass of {y : sum_n 2^-|n| [y_n != x_n] / 2 <= eps} for a finite product measure.

    Budgets are tracked in integer units of 2^-(D+1), so states with equal spent budget merge
    and only the few states near the boundary stay open at each level.
    """
    depth = _exact_depth(eps, tol)
    order = _signed_order(depth)
    symbols = x.window(-depth, depth)
    mismatch = [1.0 - float(model.weights[symbols[n + depth]]) for n in order]
    units = [1 << (depth - abs(n)) for n in order]
    beyond = 2  # sum_{|n|>D} 2^-|n| / 2 = 2^-D
    tail_from = list(accumulate(units[::-1]))[::-1]
    cap = math.floor(math.ldexp(eps, depth + 1))

    states = {0: 1.0}
    lower = 0.0
    for j in range(len(order)):
        q, u, tail = mismatch[j], units[j], tail_from[j] + beyond
        following = {}
        for used, prob in states.items():
            if used + tail <= cap:
                lower += prob
                continue
            if q < 1.0:
                following[used] = following.get(used, 0.0) + prob * (1.0 - q)
            if q > 0.0 and used + u <= cap:
                following[used + u] = following.get(used + u, 0.0) + prob * q
        states = following
        if not states:
            break
    pending = 0.0
    for used, prob in states.items():
        if used + beyond <= cap:
            lower += prob
        else:
            pending += prob
    upper = min(1.0, lower + pending)
    logger.debug("Branch-and-bound eps=%.3g depth=%d lower=%.6g open=%.3g", eps, depth, lower, pending)
    return BallMassEstimate(lower, lower, upper, BRANCH_AND_BOUND, 0, _log(lower), lower <= 0, upper - lower)


# =============================================================================
# CONVOLUTION PATH (continuous marginals)
# =============================================================================

def _overlap(lo, hi, a_lo, a_hi):
    return np.maximum(0.0, np.minimum(hi, a_hi) - np.maximum(lo, a_lo))


def wrapped_cdf(lo: float, hi: float, a: float, r: np.ndarray, wrap: str) -> np.ndarray:
    """P(|wrap(Z) - a| <= r) for Z uniform on [lo, hi], wrap folding (-1, 2) into [0,1]"""
    inside = _overlap(max(lo, 0.0), min(hi, 1.0), a - r, a + r)
    if wrap == "reflect":
        left = _overlap(lo, min(hi, 0.0), -a - r, -a + r)
        right = _overlap(max(lo, 1.0), hi, 2.0 - a - r, 2.0 - a + r)
    else:
        left = max(0.0, min(hi, 0.0) - lo) * (a <= r)
        right = max(0.0, hi - max(lo, 1.0)) * (1.0 - a <= r)
    return np.clip((inside + left + right) / (hi - lo), 0.0, 1.0)


def _radius_for(edges: np.ndarray, weight: float) -> np.ndarray:
    """rho with weight * rho/(1+rho) = t, saturating at rho = 1"""
    s = np.minimum(edges / weight, 0.5)
    return s / (1.0 - s)


def _convolved_log_masses(cdfs: List[np.ndarray], bins: int, slack_bins: int) -> Tuple[float, float, float]:
    """(lower, center, upper) log masses of the binned contribution sum staying below eps"""
    log_total = 0.0
    conv = None
    for cdf in cdfs:
        p = np.clip(np.diff(cdf, prepend=0.0), 0.0, None)
        total = p.sum()
        if total <= 0:
            return -math.inf, -math.inf, -math.inf
        log_total += math.log(total)
        p = p / total
        conv = p if conv is None else np.clip(fftconvolve(conv, p)[:bins], 0.0, None)
        total = conv.sum()
        if total <= 0:
            return -math.inf, -math.inf, -math.inf
        log_total += math.log(total)
        conv = conv / total
    cumulative = np.cumsum(conv)

    def at(limit: int) -> float:
        if limit < 0:
            return -math.inf
        return log_total + _log(float(cumulative[min(limit, bins - 1)]))

    return at(bins - slack_bins), at(bins - (slack_bins + 1) // 2), log_total


def convolution_mass(model: MeasureModel, x: BilateralSequence, eps: float,
                     bins: int = CONVOLUTION_BINS) -> BallMassEstimate:
    """Ball mass for uniform and noisy marginals by convolving per-coordinate contribution laws.

    Contributions are floor-binned at width h = eps/bins, so the binned sum bounds the
    true sum from below; the lower bound reserves one bin per coordinate plus the tail.
    """
    h = eps / bins
    depth = min(MAX_EXACT_DEPTH, max(1, math.ceil(math.log2(1.0 / h))))
    tail_bins = math.ceil(2.0 ** -depth / h)
    slack_bins = (2 * depth + 1) + tail_bins
    edges = h * np.arange(1, bins + 1, dtype=np.float64)
    indices, weights = coordinate_weights(depth)
    symbols = x.window(-depth, depth)
    radii = [_radius_for(edges, float(w)) for w in weights]

    if isinstance(model, NoisyPeriodization):
        phases = range(model.period)
        half, wrap = model.eta / 2, model.wrap
    else:
        phases = [None]
        half, wrap = None, "clamp"

    def coordinate_cdf(position: int, phase) -> np.ndarray:
        if phase is None:
            lo, hi = 0.0, 1.0
        else:
            c = float(model.block[(int(indices[position]) - phase) % model.period])
            lo, hi = c - half, c + half
        return wrapped_cdf(lo, hi, float(symbols[position]), radii[position], wrap)

    lowers, centers, uppers = [], [], []
    for phase in phases:
        # coordinate 0 carries weight 1, so an empty phase shows up there first
        if coordinate_cdf(depth, phase)[-1] <= 0:
            continue
        cdfs = [coordinate_cdf(position, phase) for position in range(len(indices))]
        lower, center, upper = _convolved_log_masses(cdfs, bins, slack_bins)
        lowers.append(lower)
        centers.append(center)
        uppers.append(upper)

    if not uppers:
        return BallMassEstimate(0.0, 0.0, 0.0, CONVOLUTION, 0, -math.inf, True, 0.0)
    shift = math.log(len(phases))
    log_lower = float(logsumexp(lowers)) - shift
    log_center = float(logsumexp(centers)) - shift
    log_upper = float(logsumexp(uppers)) - shift
    low, mean, high = math.exp(log_lower), math.exp(log_center), math.exp(log_upper)
    return BallMassEstimate(mean, low, high, CONVOLUTION, 0, log_center, log_center == -math.inf, high - low)


# =============================================================================
# MONTE CARLO PATH
# =============================================================================

def monte_carlo_mass(model: MeasureModel, x: BilateralSequence, eps: float, tol: float,
                     budget: int, seed: int) -> BallMassEstimate:
    depth = metric_depth(min(tol, eps / 100))
    rng = substream(seed, "ball-mass")
    hits = sum(int(np.count_nonzero(d <= eps)) for d in _sampled_distances(model, x, depth, budget, rng))
    mean = hits / budget
    low, high = wilson_interval(hits, budget)
    if hits == 0:
        logger.debug("Monte Carlo ball mass censored: no hits in %d draws at eps=%.3g", budget, eps)
    return BallMassEstimate(mean, low, high, MONTE_CARLO, budget, _log(mean), hits == 0, tail_bound(depth))


# =============================================================================
# DISPATCH
# =============================================================================

def _mixture_mass(model: Mixture, x: BilateralSequence, eps: float, tol: float, budget: int,
                  seed: int) -> BallMassEstimate:
    parts = []
    for index, (w, component) in enumerate(zip(model.weights, model.components)):
        if w > 0:
            parts.append((float(w), ball_mass(component, x, eps, tol, budget, derive_seed(seed, "component", index))))
    mean = sum(w * e.mean for w, e in parts)
    log_mass = float(logsumexp([math.log(w) + e.log_mass for w, e in parts]))
    methods = sorted({e.method for _, e in parts})
    return BallMassEstimate(
        mean=mean,
        ci_low=sum(w * e.ci_low for w, e in parts),
        ci_high=sum(w * e.ci_high for w, e in parts),
        method=methods[0] if len(methods) == 1 else "mixture",
        samples=sum(e.samples for _, e in parts),
        log_mass=log_mass,
        censored=log_mass == -math.inf,
        truncation_error=sum(w * e.truncation_error for w, e in parts),
    )


def ball_mass(model: MeasureModel, x: BilateralSequence, eps: float, tol: float = DEFAULT_TOLERANCE,
              budget: int = DEFAULT_BUDGET, seed: int = 0) -> BallMassEstimate:
    """mu(B(x, eps)) for the closed ball, by the most exact method the model allows"""
    _check_inputs(model, x, eps)
    if not tol > 0:
        raise DomainError(f"Tolerance must be positive, got {tol}")
    if eps >= METRIC_BOUND:
        return _certain(1.0, EXACT)
    if isinstance(model, Mixture):
        return _mixture_mass(model, x, eps, tol, budget, seed)
    if isinstance(model, PeriodicOrbit):
        return orbit_mass(model, x, eps, tol)
    if isinstance(model, BernoulliProduct) and not model.uniform:
        return branch_and_bound_mass(model, x, eps, tol)
    if isinstance(model, (BernoulliProduct, NoisyPeriodization)):
        estimate = convolution_mass(model, x, eps)
        loose = estimate.ci_high > 0 and estimate.ci_low < 0.5 * estimate.ci_high
        if loose and estimate.ci_high * budget >= 100:
            logger.debug("Convolution bounds loose at eps=%.3g (%.3g..%.3g), using Monte Carlo",
                         eps, estimate.ci_low, estimate.ci_high)
            return monte_carlo_mass(model, x, eps, tol, budget, seed)
        return estimate
    return monte_carlo_mass(model, x, eps, tol, budget, seed)
