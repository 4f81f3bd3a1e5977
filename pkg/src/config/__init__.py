from .system_config import (
    STAGES, EXPERIMENTS, COMMANDS, PARAMETER_TYPES, VERIFY_SUITES,
    TEST_FUNCTION_FAMILY_VERSION, ConfigError,
    get_experiment_config, get_stage_config, get_command_config, validate_parameter,
    get_stage_execution_order, get_missing_parameters, get_invalid_parameters,
    apply_parameter_defaults, validate_run_config
)

from .runtime_config import (
    get_worker_count, get_log_level, get_injected_fault, get_runtime_info
)

__all__ = [
    "STAGES", "EXPERIMENTS", "COMMANDS", "PARAMETER_TYPES", "VERIFY_SUITES",
    "TEST_FUNCTION_FAMILY_VERSION", "ConfigError",
    "get_experiment_config", "get_stage_config", "get_command_config", "validate_parameter",
    "get_stage_execution_order", "get_missing_parameters", "get_invalid_parameters",
    "apply_parameter_defaults", "validate_run_config",
    "get_worker_count", "get_log_level", "get_injected_fault", "get_runtime_info"
]
