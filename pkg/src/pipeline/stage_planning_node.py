"""
Stage Planning Node - Load the experiment's stages and dependency batches from config
"""
import logging
from typing import Literal

from langgraph.types import Command

from ..config import ConfigError, get_experiment_config, get_stage_execution_order
from ..schemas import ExperimentState

logger = logging.getLogger(__name__)


class StagePlanningNode:

    def __call__(self, state: ExperimentState) -> Command[Literal["supervisor"]]:
        experiment_id = state.get("experiment_id")
        run_context = state.get("run_context", {})

        experiment_config = get_experiment_config(experiment_id)
        if not experiment_config:
            return self._abort(state, f"Unknown experiment: {experiment_id}")

        try:
            execution_order = get_stage_execution_order(experiment_id)
        except ConfigError as e:
            return self._abort(state, str(e))

        logger.debug("StagePlanning - %s execution order: %s", experiment_id, execution_order)
        return Command(
            goto="supervisor",
            update={
                "run_context": {
                    **run_context,
                    "planned": True,
                    "stage_execution_order": execution_order,
                    "current_stage_batch": 0,
                    "cell_outputs": {},
                }
            }
        )

    def _abort(self, state: ExperimentState, error: str) -> Command:
        logger.error("StagePlanning - %s", error)
        return Command(
            goto="supervisor",
            update={
                "failures": state.get("failures", []) + [{"stage": "stage_planning", "error": error}],
                "run_context": {**state.get("run_context", {}), "aborted": True},
            }
        )
