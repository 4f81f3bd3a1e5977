"""
Centralized Runtime Configuration
Manages environment-driven settings (workers, logging, fault injection)
"""
import logging
import os
from typing import Optional

from dotenv import load_dotenv


class RuntimeConfig:
    """Centralized runtime configuration read from the environment / .env file"""

    def __init__(self):
        # Ensure environment variables are loaded
        load_dotenv()
        self.reload()

    def reload(self) -> None:
        """Re-read SHIFTLAB_* variables (tests patch the environment)"""
        self.workers = self._read_int("SHIFTLAB_WORKERS", 1)
        self.debug = os.getenv("SHIFTLAB_DEBUG", "false").lower() == "true"
        self.log_level = "DEBUG" if self.debug else os.getenv("SHIFTLAB_LOG_LEVEL", "WARNING").upper()
        fault = os.getenv("SHIFTLAB_INJECT_FAULT", "").strip()
        self.injected_fault = fault or None

    @staticmethod
    def _read_int(name: str, default: int) -> int:
        raw = os.getenv(name)
        if raw is None or raw.strip() == "":
            return default
        try:
            value = int(raw)
        except ValueError:
            logging.getLogger(__name__).warning("Ignoring non-integer %s=%r", name, raw)
            return default
        return value if value >= 1 else default

    def get_log_level(self) -> int:
        level = logging.getLevelName(self.log_level)
        return level if isinstance(level, int) else logging.WARNING

    def get_runtime_info(self) -> dict:
        """Get current runtime information"""
        return {
            "workers": self.workers,
            "log_level": self.log_level,
            "debug": self.debug,
            "injected_fault": self.injected_fault,
        }


# Global runtime configuration instance
runtime_config = RuntimeConfig()


def get_worker_count() -> int:
    """Default worker count when no --workers flag is given"""
    return runtime_config.workers


def get_log_level() -> int:
    return runtime_config.get_log_level()


def get_injected_fault() -> Optional[str]:
    """Name of the check whose comparison the verification runner flips, if any"""
    return runtime_config.injected_fault


def get_runtime_info() -> dict:
    return runtime_config.get_runtime_info()
