from .supervisor_node import SupervisorNode
from .stage_planning_node import StagePlanningNode
from .parameter_check_node import ParameterCheckNode
from .stage_executing_node import StageExecutingNode
from .report_node import ReportNode
from .graph import create_experiment_graph, initial_state, recursion_limit

__all__ = [
    "SupervisorNode",
    "StagePlanningNode",
    "ParameterCheckNode",
    "StageExecutingNode",
    "ReportNode",
    "create_experiment_graph",
    "initial_state",
    "recursion_limit",
]
