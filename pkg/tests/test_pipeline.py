import math

import pytest

from src.config import ConfigError
from src.dimension.grid import ScaleGrid
from src.lab.experiments import ExperimentBudgets, run_experiment, run_hd_collapse, run_pd_blowup
from src.pipeline import ParameterCheckNode, StageExecutingNode, StagePlanningNode, SupervisorNode, recursion_limit
from src.tools.lab_tools import summarize_hd_collapse, summarize_pd_blowup

NOISE_BLOCK = [0.1, 0.5, 0.9]
SMALL_HD = ExperimentBudgets(budget=1000, horizon=256, n_points=30, n_seeds=2, rate_points=2)
SMALL_PD = ExperimentBudgets(budget=1000, n_seeds=2, slope_points=2)


# =============================================================================
# NODES
# =============================================================================

@pytest.mark.parametrize("state, expected", [
    ({}, "stage_planning"),
    ({"run_context": {"planned": True}}, "parameter_check"),
    ({"run_context": {"planned": True, "checked": True}, "cells": [{}], "current_cell": 0}, "stage_executing"),
    ({"run_context": {"planned": True, "checked": True}, "cells": [{}], "current_cell": 1}, "report"),
    ({"run_context": {"aborted": True}}, "__end__"),
    ({"run_context": {"planned": True, "checked": True}, "report": {"summary": {}}}, "__end__"),
])
def test_supervisor_routing(state, expected):
    assert SupervisorNode()(state).goto == expected


def test_planning_unknown_experiment_aborts():
    command = StagePlanningNode()({"experiment_id": "nope", "run_context": {}, "failures": []})
    assert command.update["run_context"]["aborted"]
    assert command.update["failures"][0]["stage"] == "stage_planning"


def test_parameter_check_lays_out_cells():
    state = {"experiment_id": "pd_blowup", "parameters": {"block": NOISE_BLOCK, "etas": [0.1, 0.01]},
             "run_context": {"planned": True}, "failures": []}
    update = ParameterCheckNode()(state).update
    cells = update["cells"]
    assert [c["value"] for c in cells] == [0.1, 0.01]
    assert cells[0]["seed"] == cells[1]["seed"]
    assert update["parameters"]["wrap"] == "reflect"
    assert update["run_context"]["checked"]


def test_parameter_check_aborts_on_bad_values():
    state = {"experiment_id": "pd_blowup", "parameters": {"block": NOISE_BLOCK, "etas": [2.0]},
             "run_context": {}, "failures": []}
    update = ParameterCheckNode()(state).update
    assert update["run_context"]["aborted"]
    assert update["run_context"]["invalid_parameters"] == ["etas"]


def test_missing_upstream_output_is_recorded_not_raised():
    state = {
        "experiment_id": "hd_collapse",
        "parameters": {"model": {"kind": "bernoulli"}, "budget": 1000, "n_seeds": 1},
        "cells": [{"cell": 0, "value": 8, "seed": 1}],
        "current_cell": 0,
        "stage_results": [],
        "failures": [],
        "run_context": {"stage_execution_order": [["weak_distance"]], "current_stage_batch": 0, "cell_outputs": {}},
    }
    update = StageExecutingNode()(state).update
    assert update["stage_results"][0]["status"] == "skipped"
    assert update["failures"][0]["stage"] == "weak_distance"
    assert update["current_cell"] == 1


def test_recursion_limit_covers_every_visit():
    assert recursion_limit("hd_collapse", 3) == 2 * (3 * 2 + 3) + 10


# =============================================================================
# SUMMARIES
# =============================================================================

def _row(cell, stage, **metrics):
    return {"cell": cell, "stage": stage, "metrics": metrics}


def test_hd_summary():
    rows = [_row(0, "weak_distance", weak_distance=0.3), _row(1, "weak_distance", weak_distance=0.1),
            _row(0, "measure_dims", dimH_plus=0.0), _row(1, "measure_dims", dimH_plus=0.01),
            _row(0, "recurrence_rates", upper_rate_max=0.0), _row(1, "recurrence_rates", upper_rate_max=0.0)]
    summary = summarize_hd_collapse(rows, {"periods": [8, 32]})
    assert summary["passed"]
    rows[3] = _row(1, "measure_dims", dimH_plus=0.2)
    assert not summarize_hd_collapse(rows, {"periods": [8, 32]})["dimensions_collapsed"]


def test_pd_summary_ignores_zero_width():
    rows = [_row(0, "noise_distance", weak_distance=0.02), _row(1, "noise_distance", weak_distance=0.0),
            _row(0, "local_slopes", fine_slope_min=9.0), _row(1, "local_slopes", fine_slope_min=0.0)]
    summary = summarize_pd_blowup(rows, {"etas": [0.1, 0.0]})
    assert summary["slopes_blown_up"] and summary["weak_distance_decreasing"]
    assert summary["passed"]


# =============================================================================
# EXPERIMENTS
# =============================================================================

@pytest.fixture(scope="module")
def hd_report():
    coin = {"kind": "bernoulli", "alphabet": {"kind": "finite", "size": 2}, "weights": [0.5, 0.5]}
    return run_hd_collapse(coin, [4, 16], ScaleGrid(2.0 ** -10, 0.5, 8, 1), SMALL_HD, seed=0)


def test_hd_collapse_dimensions_and_rates_vanish(hd_report):
    assert hd_report.failures == []
    assert len(hd_report.stages) == 2 * 4
    assert all(row["status"] == "success" for row in hd_report.stages)
    assert hd_report.summary["dimensions_collapsed"]
    assert hd_report.summary["rates_collapsed"]
    assert len(hd_report.seeds) == 2
    assert hd_report.parameters["periods"] == [4, 16]


def test_hd_collapse_is_deterministic(hd_report):
    coin = {"kind": "bernoulli", "alphabet": {"kind": "finite", "size": 2}, "weights": [0.5, 0.5]}
    again = run_hd_collapse(coin, [4, 16], ScaleGrid(2.0 ** -10, 0.5, 8, 1), SMALL_HD, seed=0)
    assert again.to_dict() == hd_report.to_dict()


def test_pd_blowup_small_run():
    report = run_pd_blowup(NOISE_BLOCK, [0.1, 0.01], ScaleGrid(0.25, 0.5, 10, 1), SMALL_PD, seed=0)
    assert report.failures == []
    assert report.summary["weak_distance_decreasing"]
    assert report.summary["slopes_blown_up"]
    assert report.summary["passed"]


def test_pd_blowup_zero_width_is_the_base():
    report = run_pd_blowup(NOISE_BLOCK, [0.01, 0.0], ScaleGrid(0.25, 0.5, 10, 1), SMALL_PD, seed=0)
    distances = report.summary["median_weak_distances"]
    assert distances[0] > 0.0
    assert distances[1] == 0.0
    assert report.summary["fine_slopes"][1] == 0.0


def test_stage_failures_are_reported():
    report = run_pd_blowup([1.5], [0.1], ScaleGrid(0.25, 0.5, 10, 1), SMALL_PD, seed=0)
    assert [f["stage"] for f in report.failures] == ["noisy_model", "noise_distance", "local_slopes"]
    assert not report.summary["passed"]


def test_bad_parameters_raise():
    with pytest.raises(ConfigError):
        run_hd_collapse({"kind": "bernoulli"}, [0])
    with pytest.raises(ConfigError):
        run_experiment("hd_collapse", {})
    with pytest.raises(ConfigError):
        run_experiment("nope", {})


def test_report_json_has_no_runtime(hd_report):
    payload = hd_report.to_dict()
    assert "runtime_seconds" not in payload
    assert payload["schema_version"] == "1.0"
    assert not any(isinstance(v, float) and math.isnan(v) for v in payload["summary"].values())
