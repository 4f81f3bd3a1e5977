from .run_config import RunConfig, load_run_config, parse_grid
from .cli_commands import COMMAND_FUNCTIONS, EXIT_DEGRADED, EXIT_OK, EXIT_USAGE, run_command
from .verification import SUITES, run_verification

__all__ = [
    "RunConfig", "load_run_config", "parse_grid",
    "COMMAND_FUNCTIONS", "EXIT_OK", "EXIT_USAGE", "EXIT_DEGRADED", "run_command",
    "SUITES", "run_verification",
]
