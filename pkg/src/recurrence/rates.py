"""
Recurrence rates - lower/upper return and waiting rates over a scale grid
"""
import logging
import math
from typing import List, Optional

from ..dimension.grid import ScaleGrid
from ..schemas.results import RateEstimate
from ..space.sequence import BilateralSequence
from .times import entrance_time

logger = logging.getLogger(__name__)

# Admissible scales start five steps below the reference, where tau_0 no longer dominates the quotients
DEFAULT_RATE_GRID = ScaleGrid(2.0 ** -2, 0.5, 10, 5)


def rates_from_times(times: List[Optional[int]], grid: ScaleGrid, horizon: int) -> RateEstimate:
    """log(tau_j/tau_0) / log(eps_0/eps_j) over admissible scales; censored scales give lower bounds"""
    scales = grid.scales
    censored = [t is None for t in times]
    if times[0] is None:
        return RateEstimate(scales, times, [None] * len(times), censored, math.inf, math.inf, horizon, True, True)

    rates: List[Optional[float]] = [None]
    bounds: List[Optional[float]] = [None]
    for j in range(1, len(scales)):
        span = math.log(scales[0] / scales[j])
        if times[j] is None:
            rates.append(None)
            bounds.append(math.log(horizon / times[0]) / span)
        else:
            rates.append(math.log(times[j] / times[0]) / span)
            bounds.append(None)

    observed = [rates[j] for j in grid.admissible if rates[j] is not None]
    limits = [bounds[j] for j in grid.admissible if bounds[j] is not None]
    if not observed:
        logger.debug("All admissible scales censored at horizon %d", horizon)
        return RateEstimate(scales, times, rates, censored, min(limits), max(limits), horizon, True, True)
    lower, upper = min(observed), max(observed)
    if limits:
        upper = max(upper, max(limits))
    return RateEstimate(scales, times, rates, censored, lower, upper, horizon, False, bool(limits))


def waiting_rates(x: BilateralSequence, y: BilateralSequence, grid: ScaleGrid, horizon: int,
                  tol: Optional[float] = None) -> RateEstimate:
    """Waiting-time indicators from entrance times of x into balls around y"""
    times = [entrance_time(x, y, eps, horizon, tol) for eps in grid.scales]
    return rates_from_times(times, grid, horizon)


def recurrence_rates(x: BilateralSequence, grid: ScaleGrid, horizon: int, tol: Optional[float] = None) -> RateEstimate:
    return waiting_rates(x, x, grid, horizon, tol)
