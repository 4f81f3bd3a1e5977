"""
Local dimensions - per-point slope profiles, measure-dimension quantiles and local entropy
"""
import logging
import math
from typing import List, Sequence, Tuple

from ..measures.ball_mass import DEFAULT_BUDGET, DEFAULT_TOLERANCE, ball_mass
from ..measures.dynamical import dynamical_ball_mass
from ..measures.models import MeasureModel
from ..schemas.results import DimensionReport, LocalDimEstimate
from ..space.alphabet import DomainError
from ..space.sequence import BilateralSequence
from ..space.streams import derive_seed
from ..tools.worker_pool import parallel_map
from .grid import ScaleGrid

logger = logging.getLogger(__name__)

MIN_POINTS = 30
DEFAULT_TRIM = 0.05
UNRELIABLE_FRACTION = 0.2


def anchored_quotients(log_values: Sequence[float], scales: Sequence[float]) -> List[float]:
    """log(m_j/m_0) / log(eps_j/eps_0) for j >= 1, nan at the reference index 0"""
    reference = log_values[0]
    quotients = [math.nan]
    for value, eps in zip(log_values[1:], scales[1:]):
        if value == -math.inf:
            quotients.append(math.inf)
        else:
            quotients.append((value - reference) / (math.log(eps) - math.log(scales[0])))
    return quotients


def local_dims(model: MeasureModel, x: BilateralSequence, grid: ScaleGrid, tol: float = DEFAULT_TOLERANCE,
               budget: int = DEFAULT_BUDGET, seed: int = 0) -> LocalDimEstimate:
    """Slopes of log mu(B(x, eps_j)) against log eps_j, measured from the reference scale eps_0"""
    scales = grid.scales
    estimates = [ball_mass(model, x, eps, tol, budget, derive_seed(seed, "scale", j)) for j, eps in enumerate(scales)]
    log_masses = [e.log_mass for e in estimates]
    methods = [e.method for e in estimates]
    if log_masses[0] == -math.inf:
        # zero mass already at the coarsest scale: x lies off the support
        logger.debug("Point off support at eps0=%.3g", scales[0])
        return LocalDimEstimate(scales, log_masses, [math.inf] * len(scales), math.inf, math.inf, True, methods, True)
    slopes = anchored_quotients(log_masses, scales)
    window = [slopes[j] for j in grid.admissible]
    censored = any(math.isinf(s) for s in window)
    lower = min(window)
    upper = math.inf if censored else max(window)
    return LocalDimEstimate(scales, log_masses, slopes, lower, upper, censored, methods)


def _point_task(args: Tuple) -> LocalDimEstimate:
    model, point_seed, grid, tol, budget, mass_seed = args
    x = model.sample_point(point_seed)
    return local_dims(model, x, grid, tol, budget, mass_seed)


def trimmed_bounds(values: Sequence[float], trim: float) -> Tuple[float, float]:
    """Order statistics at floor(trim (n-1)) and ceil((1-trim)(n-1)); safe with infinities"""
    ordered = sorted(values)
    n = len(ordered)
    low = ordered[math.floor(trim * (n - 1))]
    high = ordered[math.ceil((1 - trim) * (n - 1))]
    return low, high


def measure_dims(model: MeasureModel, n_points: int, grid: ScaleGrid, tol: float = DEFAULT_TOLERANCE,
                 budget: int = DEFAULT_BUDGET, seed: int = 0, trim: float = DEFAULT_TRIM,
                 workers: int = 1) -> DimensionReport:
    """Essential inf/sup of local dimensions by trimmed quantiles over mu-sampled points"""
    if n_points < MIN_POINTS:
        raise DomainError(f"n_points must be at least {MIN_POINTS}, got {n_points}")
    if not 0 <= trim < 0.5:
        raise DomainError(f"trim must lie in [0, 0.5), got {trim}")
    point_seeds = [derive_seed(seed, "point", i) for i in range(n_points)]
    tasks = [(model, s, grid, tol, budget, derive_seed(seed, "mass", i)) for i, s in enumerate(point_seeds)]
    samples = parallel_map(_point_task, tasks, workers)

    dimH_minus, dimH_plus = trimmed_bounds([s.lower for s in samples], trim)
    dimP_minus, dimP_plus = trimmed_bounds([s.upper for s in samples], trim)
    censored_fraction = sum(s.censored for s in samples) / n_points
    unreliable = censored_fraction > UNRELIABLE_FRACTION
    if unreliable:
        logger.warning("%.0f%% of sampled points censored; dimension report unreliable", 100 * censored_fraction)
    return DimensionReport(samples, dimH_minus, dimH_plus, dimP_minus, dimP_plus, trim,
                           censored_fraction, unreliable, point_seeds)


def local_entropy(model: MeasureModel, x: BilateralSequence, n: int, eps: float, tol: float = DEFAULT_TOLERANCE,
                  budget: int = DEFAULT_BUDGET, seed: int = 0) -> float:
    """-(1/n) log mu(B(x, n, eps)); math.inf when the dynamical ball has no detected mass"""
    estimate = dynamical_ball_mass(model, x, n, eps, tol, budget, seed)
    if estimate.censored:
        return math.inf
    return -estimate.log_mass / n
