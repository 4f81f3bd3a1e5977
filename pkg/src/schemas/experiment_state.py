from typing import TypedDict, Optional, List, Dict, Any


class ExperimentState(TypedDict):
    """State for the config-driven experiment graph (JSON-friendly values only)"""
    experiment_id: str                   # Key into EXPERIMENTS
    parameters: Dict[str, Any]           # Validated parameters (defaults filled in)
    cells: List[Dict[str, Any]]          # Grid points: {"cell": i, "value": s or eta, "seed": ...}
    current_cell: int                    # Index of the cell being executed
    stage_results: List[Dict[str, Any]]  # One entry per executed stage and cell
    failures: List[Dict[str, Any]]       # Stage failures, recorded instead of raised
    report: Optional[Dict[str, Any]]     # Final ExperimentReport payload
    run_context: Dict[str, Any]          # Session context:
                                        # - stage_execution_order: List[List[str]] - stage batches
                                        # - current_stage_batch: int - batch within the current cell
                                        # - cell_outputs: Dict[str, Any] - outputs of finished stages in this cell
                                        # - missing_parameters / invalid_parameters: List[str]
                                        # - planned / checked / reported: bool flags for routing
