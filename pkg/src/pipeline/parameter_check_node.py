"""
Parameter Check Node - Validate experiment parameters, fill defaults and lay out the cells
"""
import logging
from typing import Literal

from langgraph.types import Command

from ..config import apply_parameter_defaults, get_experiment_config, get_invalid_parameters, get_missing_parameters
from ..schemas import ExperimentState
from ..space.streams import derive_seed

logger = logging.getLogger(__name__)


class ParameterCheckNode:
    """Validates parameters against PARAMETER_TYPES; a bad parameter ends the run"""

    def __call__(self, state: ExperimentState) -> Command[Literal["supervisor"]]:
        experiment_id = state["experiment_id"]
        parameters = state.get("parameters", {})
        run_context = state.get("run_context", {})

        missing = get_missing_parameters(experiment_id, parameters)
        invalid = get_invalid_parameters(experiment_id, parameters)
        logger.debug("ParameterCheck - missing=%s invalid=%s", missing, invalid)

        if missing or invalid:
            return Command(
                goto="supervisor",
                update={
                    "failures": state.get("failures", []) + [{
                        "stage": "parameter_check",
                        "error": f"missing parameters {missing}, invalid parameters {invalid}",
                    }],
                    "run_context": {
                        **run_context,
                        "aborted": True,
                        "missing_parameters": missing,
                        "invalid_parameters": invalid,
                    }
                }
            )

        filled = apply_parameter_defaults(experiment_id, parameters)
        cell_parameter = get_experiment_config(experiment_id)["cell_parameter"]
        # one seed for every cell: cells share random numbers and differ only in their value
        cell_seed = derive_seed(filled["seed"], "cell")
        cells = [{"cell": i, "value": value, "seed": cell_seed} for i, value in enumerate(filled[cell_parameter])]

        return Command(
            goto="supervisor",
            update={
                "parameters": filled,
                "cells": cells,
                "current_cell": 0,
                "run_context": {**run_context, "checked": True},
            }
        )
