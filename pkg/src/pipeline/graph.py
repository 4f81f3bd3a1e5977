"""
Experiment Graph - Wire the pipeline nodes into a compiled LangGraph
"""
from typing import Any, Dict

from langgraph.graph import StateGraph

from ..config import get_stage_execution_order
from ..schemas import ExperimentState
from .parameter_check_node import ParameterCheckNode
from .report_node import ReportNode
from .stage_executing_node import StageExecutingNode
from .stage_planning_node import StagePlanningNode
from .supervisor_node import SupervisorNode


def create_experiment_graph():
    """Create the experiment graph; runs are one-shot, so no checkpointer"""

    graph = StateGraph(ExperimentState)

    graph.add_node("supervisor", SupervisorNode())
    graph.add_node("stage_planning", StagePlanningNode())
    graph.add_node("parameter_check", ParameterCheckNode())
    graph.add_node("stage_executing", StageExecutingNode())
    graph.add_node("report", ReportNode())

    graph.set_entry_point("supervisor")
    return graph.compile()


def initial_state(experiment_id: str, parameters: Dict[str, Any]) -> ExperimentState:
    return {
        "experiment_id": experiment_id,
        "parameters": dict(parameters),
        "cells": [],
        "current_cell": 0,
        "stage_results": [],
        "failures": [],
        "report": None,
        "run_context": {},
    }


def recursion_limit(experiment_id: str, n_cells: int) -> int:
    """Supersteps needed: a supervisor visit around every node call"""
    try:
        batches = len(get_stage_execution_order(experiment_id))
    except ValueError:
        batches = 0
    return 2 * (n_cells * batches + 3) + 10
