"""
Experiments - Run the periodic-collapse and noisy-blow-up experiments through the experiment graph
"""
import logging
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

from ..config import ConfigError, get_experiment_config
from ..dimension.grid import ScaleGrid
from ..measures.models import MeasureModel
from ..pipeline import create_experiment_graph, initial_state, recursion_limit
from ..schemas import ExperimentReport

logger = logging.getLogger(__name__)


@dataclass
class ExperimentBudgets:
    """Sample counts and horizons shared by every cell of an experiment"""
    budget: int = 20_000
    horizon: int = 4096
    n_points: int = 30
    n_seeds: int = 10
    rate_points: int = 8
    slope_points: int = 5
    tol: float = 1e-9
    trim: float = 0.05
    workers: int = 1


def _grid_spec(grid: Optional[Union[ScaleGrid, Dict[str, Any]]]) -> Optional[Dict[str, Any]]:
    if grid is None or isinstance(grid, dict):
        return grid
    return grid.to_spec()


def run_experiment(experiment_id: str, parameters: Dict[str, Any]) -> ExperimentReport:
    """Invoke the experiment graph; parameter problems raise ConfigError, stage failures are reported"""
    experiment_config = get_experiment_config(experiment_id)
    if not experiment_config:
        raise ConfigError(f"Unknown experiment: {experiment_id}")

    cell_values = parameters.get(experiment_config["cell_parameter"])
    if cell_values is None:
        cell_values = experiment_config["parameters"][experiment_config["cell_parameter"]].get("default", [])
    n_cells = len(cell_values) if isinstance(cell_values, list) else 0

    app = create_experiment_graph()
    started = time.perf_counter()
    state = app.invoke(initial_state(experiment_id, parameters),
                       {"recursion_limit": recursion_limit(experiment_id, n_cells)})
    elapsed = time.perf_counter() - started

    if state.get("report") is None:
        errors = "; ".join(f.get("error", "") for f in state.get("failures", []))
        raise ConfigError(f"{experiment_id} did not run: {errors}")

    failures = state.get("failures", [])
    if failures:
        logger.warning("%s finished with %d stage failures", experiment_id, len(failures))
    return ExperimentReport(
        experiment_id=experiment_id,
        parameters=state["parameters"],
        stages=state["stage_results"],
        seeds=state["report"]["seeds"],
        failures=failures,
        summary=state["report"]["summary"],
        runtime_seconds=elapsed,
    )


def _budget_parameters(budgets: ExperimentBudgets, keys: Sequence[str]) -> Dict[str, Any]:
    values = asdict(budgets)
    return {k: values[k] for k in keys}


def run_hd_collapse(mu: Union[MeasureModel, Dict[str, Any]], periods: List[int],
                    grid: Optional[Union[ScaleGrid, Dict[str, Any]]] = None,
                    budgets: Optional[ExperimentBudgets] = None, seed: int = 0) -> ExperimentReport:
    """Periodize mu at each period; weak distance should shrink while dimensions and rates stay at 0"""
    budgets = budgets or ExperimentBudgets()
    parameters = {
        "model": mu.to_spec() if isinstance(mu, MeasureModel) else mu,
        "periods": list(periods),
        "grid": _grid_spec(grid),
        "seed": seed,
        **_budget_parameters(budgets, ["budget", "horizon", "n_points", "n_seeds", "rate_points",
                                       "tol", "trim", "workers"]),
    }
    return run_experiment("hd_collapse", {k: v for k, v in parameters.items() if v is not None})


def run_pd_blowup(block: Sequence[float], etas: List[float],
                  grid: Optional[Union[ScaleGrid, Dict[str, Any]]] = None,
                  budgets: Optional[ExperimentBudgets] = None, seed: int = 0, wrap: str = "reflect",
                  fine_scale: Optional[float] = None) -> ExperimentReport:
    """Noisy periodizations of block; weak distance should shrink with eta while fine slopes blow up"""
    budgets = budgets or ExperimentBudgets()
    parameters = {
        "block": [float(b) for b in block],
        "etas": [float(e) for e in etas],
        "wrap": wrap,
        "grid": _grid_spec(grid),
        "fine_scale": fine_scale,
        "seed": seed,
        **_budget_parameters(budgets, ["budget", "n_seeds", "slope_points", "tol", "workers"]),
    }
    return run_experiment("pd_blowup", {k: v for k, v in parameters.items() if v is not None})
