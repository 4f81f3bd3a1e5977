"""
Supervisor Node - Routes an experiment run through planning, parameter checks, cell execution and reporting
"""
import logging
from typing import Literal

from langgraph.types import Command

from ..schemas import ExperimentState

logger = logging.getLogger(__name__)


class SupervisorNode:
    """Supervisor that inspects the run state and picks the next node"""

    def __call__(self, state: ExperimentState) -> Command[Literal["stage_planning", "parameter_check", "stage_executing", "report", "__end__"]]:
        next_action = self._decide_next_action(state)
        logger.debug("Supervisor - experiment=%s cell=%s next=%s", state.get("experiment_id"),
                     state.get("current_cell"), next_action)
        return Command(goto=next_action)

    def _decide_next_action(self, state: ExperimentState) -> str:
        """Decide next action based on run state"""
        run_context = state.get("run_context", {})

        # 1. Aborted runs and finished reports end the graph
        if run_context.get("aborted") or state.get("report") is not None:
            return "__end__"

        # 2. Stages not planned yet
        if not run_context.get("planned"):
            return "stage_planning"

        # 3. Parameters not validated yet
        if not run_context.get("checked"):
            return "parameter_check"

        # 4. Cells left to execute
        if state.get("current_cell", 0) < len(state.get("cells", [])):
            return "stage_executing"

        # 5. Everything executed: assemble the report
        return "report"
