"""
Lab Tools - Experiment stages for the periodic-collapse and noisy-blow-up experiments
Stages exchange JSON model specs, never live objects, so experiment state stays serializable
"""
import logging
import math
import statistics
from typing import Any, Dict, List

from ..dimension.grid import ScaleGrid
from ..dimension.local import local_dims, measure_dims
from ..lab.genericity import periodize, weak_distance
from ..measures.models import NoisyPeriodization, PeriodicOrbit, build_model, orbit_separation
from ..recurrence.rates import recurrence_rates
from ..space.alphabet import AlphabetSpec
from ..space.streams import derive_seed

logger = logging.getLogger(__name__)

COLLAPSE_THRESHOLD = 0.05
BLOWUP_THRESHOLD = 5.0


def _finite_max(values: List[float]) -> float:
    finite = [v for v in values if v is not None and math.isfinite(v)]
    return max(finite) if finite else math.inf


def _median_weak_distance(mu, models: List, budget: int, seeds: List[int]) -> Dict[str, Any]:
    distances = [weak_distance(mu, nu, budget=budget, seed=s) for nu, s in zip(models, seeds)]
    return {
        "weak_distance": statistics.median(d.value for d in distances),
        "weak_distance_ci_high": statistics.median(d.ci_high for d in distances),
        "weak_distance_runs": [d.value for d in distances],
    }


# =============================================================================
# HD COLLAPSE STAGES
# =============================================================================

def periodize_stage(model: Dict[str, Any], cell: Dict[str, Any]) -> Dict[str, Any]:
    """Periodic approximation of period cell["value"]"""
    s = int(cell["value"])
    periodic = periodize(build_model(model), s, derive_seed(cell["seed"], "rep", 0))
    separation = orbit_separation(periodic)
    return {
        "status": "success",
        "output": periodic.to_spec(),
        "metrics": {"period": periodic.period, "distinct": periodic.distinct, "orbit_separation": separation},
        "message": f"Periodized with s={s} (orbit period {periodic.period})",
    }


def weak_distance_stage(model: Dict[str, Any], budget: int, n_seeds: int, periodic_model: Dict[str, Any],
                        cell: Dict[str, Any]) -> Dict[str, Any]:
    """Median over n_seeds periodizations of the weak distance to the model"""
    mu = build_model(model)
    s = int(cell["value"])
    approximations = [build_model(periodic_model)]
    approximations += [periodize(mu, s, derive_seed(cell["seed"], "rep", r)) for r in range(1, n_seeds)]
    seeds = [derive_seed(cell["seed"], "weak", r) for r in range(n_seeds)]
    metrics = _median_weak_distance(mu, approximations, budget, seeds)
    return {"status": "success", "output": metrics["weak_distance"], "metrics": metrics,
            "message": f"Median weak distance {metrics['weak_distance']:.4g} over {n_seeds} periodizations"}


def dimension_stage(grid: Dict[str, Any], n_points: int, budget: int, tol: float, trim: float, workers: int,
                    periodic_model: Dict[str, Any], cell: Dict[str, Any]) -> Dict[str, Any]:
    periodic = build_model(periodic_model)
    scale_grid = ScaleGrid.from_spec(grid)
    if isinstance(periodic, PeriodicOrbit) and scale_grid.eps0 >= orbit_separation(periodic):
        logger.warning("Grid eps0=%.3g is not below the orbit separation of period %d", scale_grid.eps0, periodic.period)
    report = measure_dims(periodic, n_points, scale_grid, tol, budget, derive_seed(cell["seed"], "dims"), trim, workers)
    return {"status": "success", "output": report.to_dict(), "metrics": report.to_dict(),
            "message": f"dimH_plus={report.dimH_plus:.4g} dimP_plus={report.dimP_plus:.4g}"}


def recurrence_stage(grid: Dict[str, Any], horizon: int, rate_points: int, periodic_model: Dict[str, Any],
                     cell: Dict[str, Any]) -> Dict[str, Any]:
    periodic = build_model(periodic_model)
    scale_grid = ScaleGrid.from_spec(grid)
    estimates = []
    for i in range(rate_points):
        x = periodic.sample_point(derive_seed(cell["seed"], "rate-point", i))
        estimates.append(recurrence_rates(x, scale_grid, horizon))
    metrics = {
        "upper_rate_max": _finite_max([e.upper for e in estimates]),
        "lower_rate_median": statistics.median(e.lower for e in estimates),
        "censored_points": sum(e.fully_censored for e in estimates),
    }
    return {"status": "success", "output": [e.to_dict() for e in estimates], "metrics": metrics,
            "message": f"Upper recurrence rate at most {metrics['upper_rate_max']:.4g}"}


# =============================================================================
# PD BLOW-UP STAGES
# =============================================================================

def noisy_model_stage(block: List[float], wrap: str, cell: Dict[str, Any]) -> Dict[str, Any]:
    """Noisy periodization of width cell["value"]; width 0 is the periodic base itself"""
    eta = float(cell["value"])
    if eta == 0.0:
        model = PeriodicOrbit(AlphabetSpec.interval(), block, distinct=len(set(block)) == len(block))
    else:
        model = NoisyPeriodization(block, eta, wrap)
    return {"status": "success", "output": model.to_spec(),
            "metrics": {"eta": eta, "entropy": model.entropy()},
            "message": f"Built {model.kind} model with eta={eta}"}


def noise_distance_stage(block: List[float], budget: int, n_seeds: int, noisy_model: Dict[str, Any],
                         cell: Dict[str, Any]) -> Dict[str, Any]:
    """Median weak distance between the periodic base and its noisy version"""
    nu = build_model(noisy_model)
    base = nu.base() if isinstance(nu, NoisyPeriodization) else nu
    seeds = [derive_seed(cell["seed"], "weak", r) for r in range(n_seeds)]
    metrics = _median_weak_distance(base, [nu] * n_seeds, budget, seeds)
    return {"status": "success", "output": metrics["weak_distance"], "metrics": metrics,
            "message": f"Median weak distance {metrics['weak_distance']:.4g} at eta={cell['value']}"}


def slope_stage(grid: Dict[str, Any], slope_points: int, budget: int, tol: float, fine_scale: float,
                noisy_model: Dict[str, Any], cell: Dict[str, Any]) -> Dict[str, Any]:
    """Local-dimension slopes on the grid scaled by eta; the fine slope is read at eta * fine_scale"""
    model = build_model(noisy_model)
    eta = float(cell["value"])
    base_grid = ScaleGrid.from_spec(grid)
    scale_grid = base_grid.scaled(eta) if eta > 0 else base_grid
    fine_index = base_grid.index_of(fine_scale)

    profiles = []
    for i in range(slope_points):
        x = model.sample_point(derive_seed(cell["seed"], "slope-point", i))
        profiles.append(local_dims(model, x, scale_grid, tol, budget, derive_seed(cell["seed"], "slope-mass", i)))
    fine_slopes = [p.slopes[fine_index] for p in profiles]
    metrics = {
        "fine_index": fine_index,
        "fine_eps": scale_grid.scales[fine_index],
        "fine_slope_median": statistics.median(fine_slopes),
        "fine_slope_min": min(fine_slopes),
        "upper_median": statistics.median(p.upper for p in profiles),
        "methods": sorted({m for p in profiles for m in p.methods}),
    }
    return {"status": "success", "output": [p.to_dict() for p in profiles], "metrics": metrics,
            "message": f"Fine-scale slope median {metrics['fine_slope_median']:.4g} at eta={eta}"}


# =============================================================================
# SUMMARIES
# =============================================================================

def _metric(stage_results: List[Dict[str, Any]], stage: str, key: str) -> List[Any]:
    """Per-cell values of one metric, in cell order; None for failed stages"""
    rows = {}
    for row in stage_results:
        if row["stage"] == stage:
            rows[row["cell"]] = (row.get("metrics") or {}).get(key)
    return [rows[c] for c in sorted(rows)]


def _strictly_decreasing(values: List[Any]) -> bool:
    return all(v is not None for v in values) and all(a > b for a, b in zip(values, values[1:]))


def summarize_hd_collapse(stage_results: List[Dict[str, Any]], parameters: Dict[str, Any]) -> Dict[str, Any]:
    distances = _metric(stage_results, "weak_distance", "weak_distance")
    dims = _metric(stage_results, "measure_dims", "dimH_plus")
    rates = _metric(stage_results, "recurrence_rates", "upper_rate_max")
    dims_ok = bool(dims) and all(d is not None and d <= COLLAPSE_THRESHOLD for d in dims)
    rates_ok = bool(rates) and all(r is not None and r <= COLLAPSE_THRESHOLD for r in rates)
    decreasing = _strictly_decreasing(distances)
    return {
        "periods": parameters.get("periods"),
        "median_weak_distances": distances,
        "dimH_plus": dims,
        "upper_rates": rates,
        "weak_distance_decreasing": decreasing,
        "dimensions_collapsed": dims_ok,
        "rates_collapsed": rates_ok,
        "passed": decreasing and dims_ok and rates_ok,
    }


def summarize_pd_blowup(stage_results: List[Dict[str, Any]], parameters: Dict[str, Any]) -> Dict[str, Any]:
    distances = _metric(stage_results, "noise_distance", "weak_distance")
    fine = _metric(stage_results, "local_slopes", "fine_slope_min")
    etas = parameters.get("etas") or []
    # a zero width reproduces the base, where no blow-up is expected
    noisy = [f for f, eta in zip(fine, etas) if eta > 0]
    blown_up = bool(noisy) and all(f is not None and f >= BLOWUP_THRESHOLD for f in noisy)
    decreasing = _strictly_decreasing(distances)
    return {
        "etas": etas,
        "median_weak_distances": distances,
        "fine_slopes": fine,
        "weak_distance_decreasing": decreasing,
        "slopes_blown_up": blown_up,
        "passed": decreasing and blown_up,
    }
