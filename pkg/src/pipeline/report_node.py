"""
Report Node - Summarize executed cells into the experiment report payload
"""
import logging
from typing import Literal

from langgraph.types import Command

from ..schemas import ExperimentState, json_safe
from ..tools.stage_registry import stage_registry

logger = logging.getLogger(__name__)


class ReportNode:

    def __call__(self, state: ExperimentState) -> Command[Literal["supervisor"]]:
        experiment_id = state["experiment_id"]
        parameters = state.get("parameters", {})
        stage_results = state.get("stage_results", [])
        failures = list(state.get("failures", []))

        summary = {}
        summarize = stage_registry.get_summary(experiment_id)
        if summarize is None:
            failures.append({"stage": "report", "error": f"No summary for {experiment_id}"})
        else:
            try:
                summary = summarize(stage_results, parameters)
            except Exception as e:
                logger.warning("Report - summary failed: %s", e)
                failures.append({"stage": "report", "error": f"Summary failed: {e}"})

        seeds = [parameters.get("seed", 0)] + sorted({cell["seed"] for cell in state.get("cells", [])})
        logger.debug("Report - %s summary: %s", experiment_id, summary)
        return Command(
            goto="supervisor",
            update={
                "failures": failures,
                "report": {"summary": json_safe(summary), "seeds": seeds},
                "run_context": {**state.get("run_context", {}), "reported": True},
            }
        )
