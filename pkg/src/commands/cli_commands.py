"""
CLI Commands - One function per command: run the estimators, write reports, return an exit code
"""
import logging
import math
import statistics
import time
from typing import Callable, Dict, List, Optional, Tuple

from ..dimension.grid import ScaleGrid
from ..dimension.local import measure_dims
from ..lab.experiments import ExperimentBudgets, run_hd_collapse, run_pd_blowup
from ..lab.genericity import periodize, weak_distance
from ..measures.models import orbit_separation
from ..recurrence.checks import galatolo_check
from ..recurrence.rates import DEFAULT_RATE_GRID, recurrence_rates, waiting_rates
from ..schemas import ExperimentReport, RateEstimate
from ..space.streams import derive_seed
from ..tools.worker_pool import parallel_map
from .run_config import RunConfig
from .verification import format_table, run_verification
from .writers import (CELL_COLUMNS, RATE_COLUMNS, SLOPE_COLUMNS, cell_rows, rate_rows, slope_rows, write_csv,
                      write_json, write_timing)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGRADED = 2

CENSORING_LIMIT = 0.2
DEFAULT_HD_MODEL = {"kind": "bernoulli", "alphabet": {"kind": "finite", "size": 2}, "weights": [0.5, 0.5]}
DEFAULT_BLOCK = [0.1, 0.5, 0.9]


def _censored_fraction(estimates: List[RateEstimate], grid: ScaleGrid) -> float:
    flags = [e.censored[j] for e in estimates for j in grid.admissible]
    return sum(flags) / len(flags) if flags else 0.0


def _rate_summary(estimates: List[RateEstimate], grid: ScaleGrid) -> Dict[str, float]:
    lowers = [e.lower for e in estimates]
    uppers = [e.upper for e in estimates if math.isfinite(e.upper)]
    return {
        "points": len(estimates),
        "lower_median": statistics.median(lowers) if lowers else math.nan,
        "upper_max": max(uppers) if uppers else math.inf,
        "censored_fraction": _censored_fraction(estimates, grid),
    }


# =============================================================================
# DIMENSION
# =============================================================================

def cmd_estimate_dim(config: RunConfig) -> int:
    model = config.build()
    report = measure_dims(model, config.n_points, config.scale_grid, config.tol, config.budget, config.seed,
                          config.trim, config.workers)
    write_json(config.out_dir / "report.json", {
        "command": "estimate-dim",
        "config": config.to_dict(),
        "report": report.to_dict(),
        "samples": [s.to_dict() for s in report.samples],
    })
    write_csv(config.out_dir / "slopes.csv", SLOPE_COLUMNS, slope_rows(report, config.seed))
    if report.unreliable:
        logger.warning("Censored fraction %.2f exceeds %.2f", report.censored_fraction, CENSORING_LIMIT)
        return EXIT_DEGRADED
    return EXIT_OK


# =============================================================================
# RECURRENCE
# =============================================================================

def _recurrence_task(args: Tuple) -> RateEstimate:
    model, point_seed, grid, horizon = args
    return recurrence_rates(model.sample_point(point_seed), grid, horizon)


def _waiting_task(args: Tuple) -> RateEstimate:
    model, target, x_seed, y_seed, grid, horizon = args
    return waiting_rates(model.sample_point(x_seed), target.sample_point(y_seed), grid, horizon)


def cmd_recurrence(config: RunConfig) -> int:
    model = config.build()
    grid = config.scale_grid_or(DEFAULT_RATE_GRID)
    seeds = [derive_seed(config.seed, "point", i) for i in range(config.n_points)]
    estimates = parallel_map(_recurrence_task, [(model, s, grid, config.horizon) for s in seeds], config.workers)
    summary = _rate_summary(estimates, grid)
    write_json(config.out_dir / "report.json", {
        "command": "recurrence",
        "config": config.to_dict(),
        "summary": summary,
        "estimates": [e.to_dict() for e in estimates],
    })
    write_csv(config.out_dir / "rates.csv", RATE_COLUMNS, rate_rows(estimates, seeds))
    return EXIT_DEGRADED if summary["censored_fraction"] > CENSORING_LIMIT else EXIT_OK


def cmd_waiting(config: RunConfig) -> int:
    """Entrance times of model-sampled x into balls around target-sampled y"""
    model = config.build()
    target = config.build("target_model") if config.target_model is not None else model
    grid = config.scale_grid_or(DEFAULT_RATE_GRID)
    x_seeds = [derive_seed(config.seed, "x", i) for i in range(config.n_pairs)]
    y_seeds = [derive_seed(config.seed, "y", i) for i in range(config.n_pairs)]
    tasks = [(model, target, xs, ys, grid, config.horizon) for xs, ys in zip(x_seeds, y_seeds)]
    estimates = parallel_map(_waiting_task, tasks, config.workers)
    summary = _rate_summary(estimates, grid)

    inequality = None
    if config.target_model is None:
        # waiting rates bound the target's local dimension only when both points follow one measure
        inequality = galatolo_check(model, grid, config.n_pairs, config.horizon, config.seed,
                                    budget=config.budget, tol=config.tol, workers=config.workers)
        summary["galatolo_violation_fraction"] = inequality.violation_fraction
        summary["galatolo_passed"] = inequality.passed

    write_json(config.out_dir / "report.json", {
        "command": "waiting",
        "config": config.to_dict(),
        "summary": summary,
        "inequality": inequality.to_dict() if inequality else None,
        "estimates": [e.to_dict() for e in estimates],
    })
    write_csv(config.out_dir / "rates.csv", RATE_COLUMNS, rate_rows(estimates, x_seeds))
    degraded = summary["censored_fraction"] > CENSORING_LIMIT or (inequality is not None and not inequality.passed)
    return EXIT_DEGRADED if degraded else EXIT_OK


# =============================================================================
# GENERICITY
# =============================================================================

def cmd_periodize(config: RunConfig) -> int:
    model = config.build()
    period = config.option("period", 8)
    periodic = periodize(model, period, config.seed)
    distance = weak_distance(model, periodic, budget=config.budget, seed=derive_seed(config.seed, "weak"))
    write_json(config.out_dir / "report.json", {
        "command": "periodize",
        "config": config.to_dict(),
        "periodic_model": periodic.to_spec(),
        "orbit_separation": orbit_separation(periodic),
        "weak_distance": distance.to_dict(),
    })
    return EXIT_OK


def _experiment_budgets(config: RunConfig) -> ExperimentBudgets:
    defaults = ExperimentBudgets()
    return ExperimentBudgets(
        budget=config.budget,
        horizon=config.horizon,
        n_points=config.n_points,
        n_seeds=config.option("n_seeds", defaults.n_seeds),
        rate_points=config.option("rate_points", defaults.rate_points),
        slope_points=config.option("slope_points", defaults.slope_points),
        tol=config.tol,
        trim=config.trim,
        workers=config.workers,
    )


def _write_experiment(config: RunConfig, command: str, report: ExperimentReport) -> int:
    write_json(config.out_dir / "report.json", {"command": command, "config": config.to_dict(), **report.to_dict()})
    write_csv(config.out_dir / "cells.csv", CELL_COLUMNS, cell_rows(report.stages))
    return EXIT_OK if report.summary.get("passed") and not report.failures else EXIT_DEGRADED


def cmd_pd_blowup(config: RunConfig) -> int:
    report = run_pd_blowup(
        config.option("block", DEFAULT_BLOCK),
        config.option("etas", [0.1, 0.01, 0.001]),
        config.grid,
        _experiment_budgets(config),
        config.seed,
        wrap=config.option("wrap", "reflect"),
        fine_scale=config.option("fine_scale"),
    )
    return _write_experiment(config, "pd-blowup", report)


def cmd_hd_collapse(config: RunConfig) -> int:
    report = run_hd_collapse(
        config.model or DEFAULT_HD_MODEL,
        config.option("periods", [8, 32, 128]),
        config.grid,
        _experiment_budgets(config),
        config.seed,
    )
    return _write_experiment(config, "hd-collapse", report)


# =============================================================================
# VERIFICATION
# =============================================================================

def cmd_verify(config: RunConfig, suite: Optional[str] = None) -> int:
    suite = suite or config.option("suite", "all")
    results = run_verification(suite, config.seed)
    print(format_table(results))
    write_json(config.out_dir / "verify.json", {
        "command": "verify",
        "suite": suite,
        "seed": config.seed,
        "results": [r.to_dict() for r in results],
    })
    return EXIT_OK if all(r.passed for r in results) else EXIT_DEGRADED


COMMAND_FUNCTIONS: Dict[str, Callable[[RunConfig], int]] = {
    "estimate-dim": cmd_estimate_dim,
    "recurrence": cmd_recurrence,
    "waiting": cmd_waiting,
    "periodize": cmd_periodize,
    "pd-blowup": cmd_pd_blowup,
    "hd-collapse": cmd_hd_collapse,
    "verify": cmd_verify,
}


def run_command(command: str, config: RunConfig) -> int:
    """Run a command and write its timing next to the report"""
    started = time.perf_counter()
    code = COMMAND_FUNCTIONS[command](config)
    write_timing(config.out_dir, command, time.perf_counter() - started)
    return code
