"""
Run configuration - JSON config file plus command-line overrides, validated against COMMANDS
"""
import json
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional

from ..config import ConfigError, get_worker_count, validate_run_config
from ..dimension.grid import ScaleGrid
from ..measures.models import MeasureModel, build_model
from ..space.alphabet import DomainError

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """Everything a command needs; unset fields keep the documented defaults"""
    model: Optional[Dict[str, Any]] = None
    target_model: Optional[Dict[str, Any]] = None
    grid: Optional[Dict[str, Any]] = None
    budget: int = 10_000
    horizon: int = 100_000
    tol: float = 1e-9
    seed: int = 0
    out: str = "out"
    workers: int = 1
    n_points: int = 30
    trim: float = 0.05
    n_pairs: int = 200
    options: Dict[str, Any] = field(default_factory=dict)

    @property
    def scale_grid(self) -> ScaleGrid:
        return self.scale_grid_or(ScaleGrid())

    def scale_grid_or(self, default: ScaleGrid) -> ScaleGrid:
        return default if self.grid is None else ScaleGrid.from_spec(self.grid)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def build(self, key: str = "model") -> MeasureModel:
        spec = getattr(self, key)
        if spec is None:
            raise ConfigError(f"Config needs a {key}")
        return build_model(spec)

    def option(self, name: str, default: Any = None) -> Any:
        return self.options.get(name, default)

    def to_dict(self) -> Dict[str, Any]:
        """Config as echoed into reports; output paths and worker counts never change results"""
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data.pop("out")
        data.pop("workers")
        return data


def read_config_file(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Malformed JSON in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config {path} must hold a JSON object")
    return data


def parse_grid(text: str) -> Dict[str, Any]:
    try:
        return ScaleGrid.from_string(text).to_spec()
    except DomainError as e:
        raise ConfigError(str(e)) from e


def load_run_config(command: str, path: Optional[str] = None,
                    overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """File values first, then non-None flag overrides; unknown keys and bad ranges raise ConfigError"""
    data = read_config_file(path)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    if "workers" not in data:
        data["workers"] = get_worker_count()
    validate_run_config(command, data)
    logger.debug("Run config for %s: %s", command, data)
    return RunConfig(**data)
