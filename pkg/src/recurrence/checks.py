"""
Recurrence inequalities - return rates against dimensions, waiting rates against target dimensions,
and dynamical-ball returns against plain returns
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

from ..dimension.grid import ScaleGrid
from ..dimension.local import local_dims, measure_dims
from ..measures.ball_mass import DEFAULT_BUDGET, DEFAULT_TOLERANCE
from ..measures.models import MeasureModel
from ..schemas.results import DimensionReport, InequalityReport
from ..space.sequence import BilateralSequence
from ..space.streams import derive_seed
from ..tools.worker_pool import parallel_map
from .rates import recurrence_rates, waiting_rates
from .times import dynamical_return_time, return_time

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 0.3
DEFAULT_REQUIRED_FRACTION = 0.9
MAX_LISTED_VIOLATIONS = 20


def _report(name: str, outcomes: List[Tuple[bool, dict]], slack: float, required: float) -> InequalityReport:
    holds = sum(1 for ok, _ in outcomes if ok)
    total = len(outcomes)
    violations = [detail for ok, detail in outcomes if not ok][:MAX_LISTED_VIOLATIONS]
    passed = total > 0 and holds >= required * total
    logger.info("%s: %d/%d hold (required %.0f%%)", name, holds, total, 100 * required)
    return InequalityReport(name, holds, total, slack, required, passed, violations)


def _recurrence_task(args: Tuple) -> float:
    model, point_seed, grid, horizon, tol = args
    return recurrence_rates(model.sample_point(point_seed), grid, horizon, tol).lower


def barreira_saussol_check(model: MeasureModel, grid: ScaleGrid, n_points: int, horizon: int, seed: int = 0,
                           slack: float = DEFAULT_SLACK, required_fraction: float = DEFAULT_REQUIRED_FRACTION,
                           budget: int = DEFAULT_BUDGET, tol: float = DEFAULT_TOLERANCE,
                           report: Optional[DimensionReport] = None, workers: int = 1) -> InequalityReport:
    """Lower recurrence rate <= dimH_plus + slack at mu-sampled points"""
    if report is None:
        report = measure_dims(model, n_points, grid, tol, budget, seed, workers=workers)
    tasks = [(model, point_seed, grid, horizon, None) for point_seed in report.seeds]
    lowers = parallel_map(_recurrence_task, tasks, workers)
    threshold = report.dimH_plus + slack
    outcomes = [(lower <= threshold, {"point": i, "rate_lower": lower, "threshold": threshold})
                for i, lower in enumerate(lowers)]
    return _report("barreira_saussol", outcomes, slack, required_fraction)


def _waiting_task(args: Tuple) -> Tuple[float, float]:
    model, x_seed, y_seed, grid, horizon, tol, budget, mass_seed = args
    x, y = model.sample_point(x_seed), model.sample_point(y_seed)
    dims = local_dims(model, y, grid, tol, budget, mass_seed)
    return waiting_rates(x, y, grid, horizon).lower, dims.lower


def galatolo_check(model: MeasureModel, grid: ScaleGrid, n_pairs: int, horizon: int, seed: int = 0,
                   slack: float = DEFAULT_SLACK, required_fraction: float = DEFAULT_REQUIRED_FRACTION,
                   budget: int = DEFAULT_BUDGET, tol: float = DEFAULT_TOLERANCE,
                   workers: int = 1) -> InequalityReport:
    """Lower waiting rate R(x, y) >= lower local dimension at y - slack over independent pairs"""
    tasks = [(model, derive_seed(seed, "x", i), derive_seed(seed, "y", i), grid, horizon, tol, budget,
              derive_seed(seed, "mass", i)) for i in range(n_pairs)]
    results = parallel_map(_waiting_task, tasks, workers)
    outcomes = []
    for i, (waiting_lower, dim_lower) in enumerate(results):
        ok = math.isinf(dim_lower) or waiting_lower >= dim_lower - slack
        outcomes.append((ok, {"pair": i, "waiting_lower": waiting_lower, "dim_lower": dim_lower}))
    return _report("galatolo", outcomes, slack, required_fraction)


def dynamical_return_check(points: Sequence[BilateralSequence], ns: Sequence[int], eps: float,
                           horizon: int) -> InequalityReport:
    """tau_{eps 2^-n}(x) >= R_n(x, eps) on every instance where the plain return is observed"""
    outcomes = []
    for i, x in enumerate(points):
        for n in ns:
            tau = return_time(x, eps * 2.0 ** -n, horizon)
            if tau is None:
                continue
            r_n = dynamical_return_time(x, n, eps, horizon)
            ok = r_n is not None and tau >= r_n
            outcomes.append((ok, {"point": i, "n": int(n), "tau": tau, "R_n": r_n}))
    return _report("dynamical_return", outcomes, 0.0, 1.0)
