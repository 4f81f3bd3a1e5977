"""
Stage Executing Node - Execute one dependency batch of stages for the current cell
"""
import logging
from typing import Any, Dict, Literal

from langgraph.types import Command

from ..config import get_stage_config
from ..schemas import ExperimentState, json_safe
from ..tools.stage_registry import stage_registry

logger = logging.getLogger(__name__)


class StageExecutingNode:
    """Runs stage functions; failures are recorded in the state, never raised"""

    def __call__(self, state: ExperimentState) -> Command[Literal["supervisor"]]:
        run_context = state.get("run_context", {})
        execution_order = run_context.get("stage_execution_order", [])
        current_batch = run_context.get("current_stage_batch", 0)
        cell_index = state.get("current_cell", 0)
        cell = state["cells"][cell_index]
        cell_outputs = dict(run_context.get("cell_outputs", {}))

        stage_results = list(state.get("stage_results", []))
        failures = list(state.get("failures", []))

        batch = execution_order[current_batch] if current_batch < len(execution_order) else []
        logger.debug("StageExecuting - cell %d (value=%s) batch %d: %s", cell_index, cell["value"], current_batch, batch)

        for stage_name in batch:
            result = self._execute_stage(stage_name, state.get("parameters", {}), cell_outputs, cell)
            row = {
                "cell": cell["cell"],
                "value": cell["value"],
                "seed": cell["seed"],
                "stage": stage_name,
                "status": result.get("status", "error"),
                "metrics": json_safe(result.get("metrics", {})),
                "message": result.get("message", result.get("error", "")),
            }
            stage_results.append(row)
            if row["status"] == "success":
                cell_outputs[get_stage_config(stage_name)["returns"]] = result.get("output")
            else:
                failures.append({"cell": cell["cell"], "value": cell["value"], "stage": stage_name,
                                 "error": result.get("error", "unknown error")})

        next_batch = current_batch + 1
        if next_batch >= len(execution_order):
            # cell finished: move on and drop its intermediate outputs
            cell_index, next_batch, cell_outputs = cell_index + 1, 0, {}

        return Command(
            goto="supervisor",
            update={
                "stage_results": stage_results,
                "failures": failures,
                "current_cell": cell_index,
                "run_context": {
                    **run_context,
                    "current_stage_batch": next_batch,
                    "cell_outputs": cell_outputs,
                }
            }
        )

    def _execute_stage(self, stage_name: str, parameters: Dict[str, Any], cell_outputs: Dict[str, Any],
                       cell: Dict[str, Any]) -> Dict[str, Any]:
        """Execute a specific stage with arguments built from config"""
        stage_function = stage_registry.get_stage(stage_name)
        if not stage_function:
            return {"status": "error", "error": f"Stage {stage_name} not found"}

        try:
            kwargs = stage_registry.build_arguments(stage_name, parameters, cell_outputs, cell)
        except KeyError as e:
            return {"status": "skipped", "error": str(e.args[0])}

        try:
            result = stage_function(**kwargs)
        except Exception as e:
            logger.warning("StageExecuting - %s failed at cell %s: %s", stage_name, cell["cell"], e)
            return {"status": "error", "error": f"Stage execution failed: {e}"}
        return result if isinstance(result, dict) else {"status": "success", "output": result}
