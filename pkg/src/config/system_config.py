"""
System Configuration - Defines parameter types, experiment stages, experiments and CLI commands
This file keeps the lab modular - add new stages/experiments here
"""
from typing import Dict, List, Any, Optional
import math

TEST_FUNCTION_FAMILY_VERSION = "v1"
SEED_LIMIT = 2 ** 64


class ConfigError(ValueError):
    """Raised when a configuration value or key fails validation"""


# =============================================================================
# PARAMETER VALIDATION FUNCTIONS
# =============================================================================

def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_unit_open_float(value: Any) -> bool:
    """Validate a real in (0, 1)"""
    return _is_number(value) and 0 < value < 1


def validate_trim(value: Any) -> bool:
    """Validate a trimming fraction in [0, 0.5)"""
    return _is_number(value) and 0 <= value < 0.5


def validate_unit_closed_open_float(value: Any) -> bool:
    """Validate a real in [0, 1)"""
    return _is_number(value) and 0 <= value < 1


def validate_positive_int(value: Any) -> bool:
    return _is_integer(value) and value >= 1


def validate_seed(value: Any) -> bool:
    """Validate an unsigned 64-bit seed"""
    return _is_integer(value) and 0 <= value < SEED_LIMIT


def validate_float_list(value: Any) -> bool:
    return isinstance(value, list) and len(value) > 0 and all(_is_number(v) for v in value)


def validate_int_list(value: Any) -> bool:
    return isinstance(value, list) and len(value) > 0 and all(validate_positive_int(v) for v in value)


def validate_eta_list(value: Any) -> bool:
    """Noise widths in [0, 1); 0 stands for the unperturbed periodic base"""
    return isinstance(value, list) and len(value) > 0 and all(validate_unit_closed_open_float(v) for v in value)


def validate_wrap_mode(value: Any) -> bool:
    return value in ("reflect", "clamp")


def validate_model_spec(value: Any) -> bool:
    """Validate a measure-model spec by building it"""
    from ..measures.models import build_model
    from ..space.alphabet import DomainError
    try:
        build_model(value)
        return True
    except (DomainError, TypeError, ValueError, AttributeError):
        return False


def validate_grid_spec(value: Any) -> bool:
    """Validate a scale grid spec {eps0, q, J, s_index}"""
    from ..dimension.grid import ScaleGrid
    from ..space.alphabet import DomainError
    if not isinstance(value, dict):
        return False
    try:
        ScaleGrid.from_spec(value)
        return True
    except (DomainError, TypeError, ValueError):
        return False


def validate_path(value: Any) -> bool:
    return isinstance(value, str) and len(value.strip()) > 0


def validate_suite_name(value: Any) -> bool:
    return value in VERIFY_SUITES


# =============================================================================
# PARAMETER TYPE REGISTRY
# =============================================================================

PARAMETER_TYPES = {
    "unit_open_float": {"validator": validate_unit_open_float, "description": "Real number in (0, 1)"},
    "trim": {"validator": validate_trim, "description": "Trimming fraction in [0, 0.5)"},
    "positive_int": {"validator": validate_positive_int, "description": "Integer >= 1"},
    "seed": {"validator": validate_seed, "description": "Unsigned 64-bit integer"},
    "float_list": {"validator": validate_float_list, "description": "Non-empty list of reals"},
    "int_list": {"validator": validate_int_list, "description": "Non-empty list of integers >= 1"},
    "eta_list": {"validator": validate_eta_list, "description": "Non-empty list of noise widths in [0, 1)"},
    "wrap_mode": {"validator": validate_wrap_mode, "description": "reflect or clamp"},
    "model_spec": {"validator": validate_model_spec, "description": "Measure model spec (JSON object)"},
    "grid_spec": {"validator": validate_grid_spec, "description": "Scale grid {eps0, q, J, s_index}"},
    "path": {"validator": validate_path, "description": "Filesystem path"},
    "suite": {"validator": validate_suite_name, "description": "Verification suite name"},
}

# =============================================================================
# STAGES CONFIGURATION
# =============================================================================

STAGES = {
    "periodize": {
        "function": "lab_tools.periodize_stage",  # Module.function path inside src/tools
        "description": "Approximate the model by a periodic-orbit measure of the cell's period",
        "parameters": ["model"],
        "returns": "periodic_model",
    },
    "weak_distance": {
        "function": "lab_tools.weak_distance_stage",
        "description": "Median weak distance between the model and its periodizations",
        "parameters": ["model", "budget", "n_seeds"],
        "requires": ["periodic_model"],
        "returns": "weak_distance",
    },
    "measure_dims": {
        "function": "lab_tools.dimension_stage",
        "description": "Dimension report of the periodized measure",
        "parameters": ["grid", "n_points", "budget", "tol", "trim", "workers"],
        "requires": ["periodic_model"],
        "returns": "dimension",
    },
    "recurrence_rates": {
        "function": "lab_tools.recurrence_stage",
        "description": "Recurrence rates at points of the periodized measure",
        "parameters": ["grid", "horizon", "rate_points"],
        "requires": ["periodic_model"],
        "returns": "rates",
    },
    "noisy_model": {
        "function": "lab_tools.noisy_model_stage",
        "description": "Noisy periodization of the block with the cell's noise width",
        "parameters": ["block", "wrap"],
        "returns": "noisy_model",
    },
    "noise_distance": {
        "function": "lab_tools.noise_distance_stage",
        "description": "Median weak distance between the periodic base and its noisy periodization",
        "parameters": ["block", "budget", "n_seeds"],
        "requires": ["noisy_model"],
        "returns": "weak_distance",
    },
    "local_slopes": {
        "function": "lab_tools.slope_stage",
        "description": "Local-dimension slopes on the noise-relative grid",
        "parameters": ["grid", "slope_points", "budget", "tol", "fine_scale"],
        "requires": ["noisy_model"],
        "returns": "slopes",
    },
}

# =============================================================================
# EXPERIMENTS CONFIGURATION
# =============================================================================

_COMMON_PARAMETERS = {
    "budget": {"type": "positive_int", "description": "Monte Carlo samples per estimate", "required": False, "default": 20000},
    "n_seeds": {"type": "positive_int", "description": "Repetitions behind each median", "required": False, "default": 10},
    "tol": {"type": "unit_open_float", "description": "Metric/mass tolerance", "required": False, "default": 1e-9},
    "seed": {"type": "seed", "description": "Root seed", "required": False, "default": 0},
    "workers": {"type": "positive_int", "description": "Worker processes", "required": False, "default": 1},
}

EXPERIMENTS = {
    "hd_collapse": {
        "description": "Periodic approximations: weak distance shrinks while dimensions and rates stay at 0",
        "stages": ["periodize", "weak_distance", "measure_dims", "recurrence_rates"],
        "cell_parameter": "periods",
        "summary": "lab_tools.summarize_hd_collapse",
        "parameters": {
            "model": {"type": "model_spec", "description": "Measure to approximate", "required": True},
            "periods": {"type": "int_list", "description": "Periods s of the approximations", "required": False, "default": [8, 32, 128]},
            "grid": {"type": "grid_spec", "description": "Scale grid below the orbit separation", "required": False,
                     "default": {"eps0": 2.0 ** -16, "q": 0.5, "J": 12, "s_index": 1}},
            "horizon": {"type": "positive_int", "description": "Return-time search horizon", "required": False, "default": 4096},
            "n_points": {"type": "positive_int", "description": "Sampled points per dimension report", "required": False, "default": 30},
            "rate_points": {"type": "positive_int", "description": "Sampled points per rate estimate", "required": False, "default": 8},
            "trim": {"type": "trim", "description": "Quantile trimming fraction", "required": False, "default": 0.05},
            **_COMMON_PARAMETERS,
        },
    },
    "pd_blowup": {
        "description": "Noisy periodizations: weak distance shrinks with eta while fine-scale slopes blow up",
        "stages": ["noisy_model", "noise_distance", "local_slopes"],
        "cell_parameter": "etas",
        "summary": "lab_tools.summarize_pd_blowup",
        "parameters": {
            "block": {"type": "float_list", "description": "Periodic block in [0,1]", "required": True},
            "etas": {"type": "eta_list", "description": "Noise widths", "required": False, "default": [0.1, 0.01, 0.001]},
            "wrap": {"type": "wrap_mode", "description": "How noise is folded into [0,1]", "required": False, "default": "reflect"},
            "grid": {"type": "grid_spec", "description": "Scale grid, multiplied by eta per cell", "required": False,
                     "default": {"eps0": 0.25, "q": 0.5, "J": 10, "s_index": 1}},
            "slope_points": {"type": "positive_int", "description": "Sampled points per slope profile", "required": False, "default": 5},
            "fine_scale": {"type": "unit_open_float", "description": "Noise-relative scale of the blow-up check", "required": False,
                           "default": 2.0 ** -10},
            **_COMMON_PARAMETERS,
        },
    },
}

# =============================================================================
# COMMANDS CONFIGURATION
# =============================================================================

_RUN_KEYS = ["grid", "budget", "horizon", "tol", "seed", "out", "workers"]

COMMANDS = {
    "estimate-dim": {"description": "Dimension report of a model", "keys": ["model", "n_points", "trim"] + _RUN_KEYS},
    "recurrence": {"description": "Recurrence rates at sampled points", "keys": ["model", "n_points", "trim"] + _RUN_KEYS},
    "waiting": {"description": "Waiting-time indicators over sampled pairs", "keys": ["model", "target_model", "n_pairs"] + _RUN_KEYS},
    "periodize": {"description": "Periodic approximation of a model", "keys": ["model", "options"] + _RUN_KEYS},
    "pd-blowup": {"description": "Packing-dimension blow-up experiment", "keys": ["options"] + _RUN_KEYS},
    "hd-collapse": {"description": "Hausdorff-dimension collapse experiment", "keys": ["model", "n_points", "trim", "options"] + _RUN_KEYS},
    "verify": {"description": "Property suites", "keys": ["options"] + _RUN_KEYS},
}

VERIFY_SUITES = ["metric", "measures", "dimension", "recurrence", "genericity", "all"]

# =============================================================================
# HELPER FUNCTIONS
# =============================================================================

def get_experiment_config(experiment_id: str) -> Optional[Dict[str, Any]]:
    """Get configuration for a specific experiment"""
    return EXPERIMENTS.get(experiment_id)


def get_stage_config(stage_name: str) -> Optional[Dict[str, Any]]:
    """Get configuration for a specific stage"""
    return STAGES.get(stage_name)


def get_command_config(command: str) -> Optional[Dict[str, Any]]:
    return COMMANDS.get(command)


def validate_parameter(param_name: str, value: Any, experiment_id: str) -> bool:
    """Validate a parameter value for a given experiment"""
    experiment_config = get_experiment_config(experiment_id)
    if not experiment_config:
        return False

    param_config = experiment_config.get("parameters", {}).get(param_name)
    if not param_config:
        return False

    type_config = PARAMETER_TYPES.get(param_config.get("type"))
    if not type_config:
        return False

    return type_config["validator"](value)


def get_stage_execution_order(experiment_id: str) -> List[List[str]]:
    """Get stage execution order considering dependencies
    Returns list of lists - stages in one inner list only depend on earlier batches"""

    experiment_config = get_experiment_config(experiment_id)
    if not experiment_config:
        return []

    remaining = list(experiment_config.get("stages", []))
    produced = set()
    execution_order = []

    while remaining:
        ready = [s for s in remaining if all(dep in produced for dep in STAGES[s].get("requires", []))]
        if not ready:
            raise ConfigError(f"Unsatisfiable stage dependencies in {experiment_id}: {remaining}")
        execution_order.append(ready)
        produced.update(STAGES[s]["returns"] for s in ready)
        remaining = [s for s in remaining if s not in ready]

    return execution_order


def get_missing_parameters(experiment_id: str, current_params: Dict[str, Any]) -> List[str]:
    """Get list of missing required parameters for an experiment"""
    experiment_config = get_experiment_config(experiment_id)
    if not experiment_config:
        return []

    return [name for name, config in experiment_config.get("parameters", {}).items()
            if config.get("required", False) and current_params.get(name) is None]


def get_invalid_parameters(experiment_id: str, current_params: Dict[str, Any]) -> List[str]:
    """Unknown parameters and parameters failing their type validator"""
    experiment_config = get_experiment_config(experiment_id) or {}
    declared = experiment_config.get("parameters", {})
    invalid = [name for name in current_params if name not in declared]
    invalid += [name for name, value in current_params.items()
                if name in declared and value is not None and not validate_parameter(name, value, experiment_id)]
    return invalid


def apply_parameter_defaults(experiment_id: str, current_params: Dict[str, Any]) -> Dict[str, Any]:
    """Fill in defaults for parameters that were not given"""
    experiment_config = get_experiment_config(experiment_id) or {}
    filled = dict(current_params)
    for name, config in experiment_config.get("parameters", {}).items():
        if filled.get(name) is None and "default" in config:
            filled[name] = config["default"]
    return filled


# =============================================================================
# RUN CONFIG VALIDATION
# =============================================================================

# (parameter type, extra range check, description)
RUN_CONFIG_RANGES = {
    "budget": ("positive_int", lambda v: v >= 1000, "integer >= 1000"),
    "horizon": ("positive_int", None, "integer >= 1"),
    "tol": ("unit_open_float", None, "real in (0, 1)"),
    "seed": ("seed", None, "integer in [0, 2^64)"),
    "workers": ("positive_int", None, "integer >= 1"),
    "n_points": ("positive_int", lambda v: v >= 30, "integer >= 30"),
    "n_pairs": ("positive_int", None, "integer >= 1"),
    "trim": ("trim", None, "real in [0, 0.5)"),
    "out": ("path", None, "non-empty path"),
    "model": ("model_spec", None, "valid model spec"),
    "target_model": ("model_spec", None, "valid model spec"),
    "grid": ("grid_spec", None, "grid with 0<eps0<1, 0<q<1, J>=8, 0<=s_index<J"),
}

# Command options and their parameter types
OPTION_TYPES = {
    "periods": "int_list",
    "etas": "eta_list",
    "n_seeds": "positive_int",
    "period": "positive_int",
    "suite": "suite",
    "block": "float_list",
    "wrap": "wrap_mode",
    "rate_points": "positive_int",
    "slope_points": "positive_int",
    "fine_scale": "unit_open_float",
}


def _check_value(name: str, value: Any, type_name: str, extra=None, description: Optional[str] = None) -> None:
    type_config = PARAMETER_TYPES[type_name]
    if not type_config["validator"](value) or (extra is not None and not extra(value)):
        raise ConfigError(f"{name} must be {description or type_config['description']}, got {value!r}")


def validate_run_config(command: str, data: Dict[str, Any]) -> None:
    """Raise ConfigError on unknown keys or out-of-range values for a command"""
    command_config = get_command_config(command)
    if not command_config:
        raise ConfigError(f"Unknown command: {command}")

    allowed = set(command_config["keys"])
    unknown = sorted(k for k in data if k not in allowed)
    if unknown:
        raise ConfigError(f"Unknown config keys for {command}: {unknown}")

    for key, value in data.items():
        if value is None or key == "options":
            continue
        type_name, extra, description = RUN_CONFIG_RANGES[key]
        _check_value(key, value, type_name, extra, description)

    options = data.get("options") or {}
    if not isinstance(options, dict):
        raise ConfigError("options must be a JSON object")
    unknown_options = sorted(k for k in options if k not in OPTION_TYPES)
    if unknown_options:
        raise ConfigError(f"Unknown options for {command}: {unknown_options}")
    for name, value in options.items():
        if value is not None:
            _check_value(f"options.{name}", value, OPTION_TYPES[name])
