"""
Config-Driven Stage Registry - Dynamically loads stage functions based on configuration
"""
import importlib
import logging
from typing import Any, Callable, Dict, List, Optional

from ..config import STAGES, get_experiment_config, get_stage_config

logger = logging.getLogger(__name__)


class StageRegistry:
    """Config-driven registry for managing experiment stages dynamically"""

    def __init__(self):
        self._function_cache = {}  # Cache loaded functions by dotted path

    def _load(self, function_path: str) -> Optional[Callable]:
        if function_path in self._function_cache:
            return self._function_cache[function_path]
        try:
            # "lab_tools.periodize_stage" -> src.tools.lab_tools.periodize_stage
            module_name, function_name = function_path.rsplit(".", 1)
            module = importlib.import_module(f"src.tools.{module_name}")
            function = getattr(module, function_name)
        except (ImportError, AttributeError, ValueError) as e:
            logger.error("Error loading %s: %s", function_path, e)
            return None
        self._function_cache[function_path] = function
        return function

    def get_stage(self, stage_name: str) -> Optional[Callable]:
        """Get a stage function by name, loading it dynamically"""
        stage_config = get_stage_config(stage_name)
        if not stage_config or not stage_config.get("function"):
            return None
        return self._load(stage_config["function"])

    def get_summary(self, experiment_id: str) -> Optional[Callable]:
        experiment_config = get_experiment_config(experiment_id)
        if not experiment_config or not experiment_config.get("summary"):
            return None
        return self._load(experiment_config["summary"])

    def get_stages_for_experiment(self, experiment_id: str) -> List[str]:
        experiment_config = get_experiment_config(experiment_id)
        if not experiment_config:
            return []
        return experiment_config.get("stages", [])

    def get_all_stages(self) -> Dict[str, str]:
        """Get all registered stage names and descriptions"""
        return {name: config.get("description", "") for name, config in STAGES.items()}

    def build_arguments(self, stage_name: str, parameters: Dict[str, Any], cell_outputs: Dict[str, Any],
                        cell: Dict[str, Any]) -> Dict[str, Any]:
        """Keyword arguments from experiment parameters, upstream outputs and the cell"""
        stage_config = get_stage_config(stage_name) or {}
        kwargs = {param: parameters.get(param) for param in stage_config.get("parameters", [])}
        for dependency in stage_config.get("requires", []):
            if dependency not in cell_outputs:
                raise KeyError(f"Stage {stage_name} requires missing output: {dependency}")
            kwargs[dependency] = cell_outputs[dependency]
        kwargs["cell"] = cell
        return kwargs


# Global registry instance
stage_registry = StageRegistry()
