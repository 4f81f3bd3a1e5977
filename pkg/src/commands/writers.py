"""
Report writers - deterministic JSON reports and plot-ready CSV tables
"""
import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from ..schemas import SCHEMA_VERSION, DimensionReport, RateEstimate, json_safe

logger = logging.getLogger(__name__)

SLOPE_COLUMNS = ["seed", "point", "grid_index", "eps", "mass", "log_mass", "slope", "censored", "method"]
RATE_COLUMNS = ["seed", "point", "grid_index", "eps", "time", "rate", "censored", "method"]
CELL_COLUMNS = ["cell", "value", "seed", "stage", "metric", "value_out"]

RATE_METHOD = "first-hit"


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    """Sorted keys and fixed separators: identical payloads give identical bytes"""
    path.parent.mkdir(parents=True, exist_ok=True)
    body = {"schema_version": SCHEMA_VERSION, **json_safe(payload)}
    path.write_text(json.dumps(body, sort_keys=True, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    logger.debug("Wrote %s", path)
    return path


def write_csv(path: Path, fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _cell(v) for k, v in row.items()})
    logger.debug("Wrote %s", path)
    return path


def slope_rows(report: DimensionReport, seed: int) -> List[Dict[str, Any]]:
    rows = []
    for point, sample in enumerate(report.samples):
        point_seed = report.seeds[point] if point < len(report.seeds) else seed
        for j, eps in enumerate(sample.scales):
            log_mass = sample.log_masses[j]
            rows.append({
                "seed": point_seed,
                "point": point,
                "grid_index": j,
                "eps": eps,
                "mass": math.exp(log_mass),
                "log_mass": json_safe(log_mass),
                "slope": json_safe(sample.slopes[j]),
                "censored": log_mass == -math.inf,
                "method": sample.methods[j] if j < len(sample.methods) else "",
            })
    return rows


def rate_rows(estimates: Sequence[RateEstimate], seeds: Sequence[int]) -> List[Dict[str, Any]]:
    rows = []
    for point, (estimate, point_seed) in enumerate(zip(estimates, seeds)):
        for j, eps in enumerate(estimate.scales):
            rows.append({
                "seed": point_seed,
                "point": point,
                "grid_index": j,
                "eps": eps,
                "time": estimate.times[j],
                "rate": estimate.rates[j],
                "censored": estimate.censored[j],
                "method": RATE_METHOD,
            })
    return rows


def cell_rows(stage_results: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """One row per scalar stage metric"""
    rows = []
    for result in stage_results:
        for metric, value in sorted((result.get("metrics") or {}).items()):
            if isinstance(value, (list, dict)):
                continue
            rows.append({"cell": result["cell"], "value": result["value"], "seed": result["seed"],
                         "stage": result["stage"], "metric": metric, "value_out": value})
    return rows


def write_timing(out_dir: Path, command: str, seconds: float) -> Path:
    """Wall-clock time lives apart from the deterministic report"""
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "timing.json"
    path.write_text(json.dumps({"command": command, "runtime_seconds": round(seconds, 3)}, indent=2) + "\n",
                    encoding="utf-8")
    return path
