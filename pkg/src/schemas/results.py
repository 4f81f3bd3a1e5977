"""
Result records - estimates, reports and check outcomes shared across modules
"""
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

SCHEMA_VERSION = "1.0"


def json_safe(value: Any) -> Any:
    """Replace non-finite floats by strings/None so reports stay strict JSON"""
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    return value


@dataclass
class BallMassEstimate:
    """mu(B(x, eps)) with 95% bounds; log_mass is authoritative for tiny masses"""
    mean: float
    ci_low: float
    ci_high: float
    method: str
    samples: int = 0
    log_mass: float = -math.inf
    censored: bool = False
    truncation_error: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return json_safe(asdict(self))


@dataclass
class LocalDimEstimate:
    """Per-scale slopes of log mu(B(x,eps)) against log eps, relative to the reference scale"""
    scales: List[float]
    log_masses: List[float]
    slopes: List[float]
    lower: float
    upper: float
    censored: bool
    methods: List[str] = field(default_factory=list)
    off_support: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return json_safe(asdict(self))


@dataclass
class DimensionReport:
    samples: List[LocalDimEstimate]
    dimH_minus: float
    dimH_plus: float
    dimP_minus: float
    dimP_plus: float
    trim: float = 0.05
    censored_fraction: float = 0.0
    unreliable: bool = False
    seeds: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return json_safe({
            "dimH_minus": self.dimH_minus,
            "dimH_plus": self.dimH_plus,
            "dimP_minus": self.dimP_minus,
            "dimP_plus": self.dimP_plus,
            "trim": self.trim,
            "censored_fraction": self.censored_fraction,
            "unreliable": self.unreliable,
            "n_points": len(self.samples),
            "seeds": list(self.seeds),
        })


@dataclass
class PackingCoverResult:
    value: float
    witness: List[Any]
    alpha: float
    delta: float
    mode: str
    optimal: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return json_safe(asdict(self))


@dataclass
class RateEstimate:
    """Return or entrance times over a scale grid and the extracted lower/upper rates"""
    scales: List[float]
    times: List[Optional[int]]
    rates: List[Optional[float]]
    censored: List[bool]
    lower: float
    upper: float
    horizon: int
    fully_censored: bool = False
    upper_is_bound: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return json_safe(asdict(self))


@dataclass
class WeakDistance:
    """max_i |int f_i dnu - int f_i dmu| with a combined 95% interval"""
    value: float
    ci_low: float
    ci_high: float
    per_function: List[Tuple[str, float]]
    samples: int

    def in_neighborhood(self, delta: float) -> bool:
        """nu lies in V_mu(f_1..f_r; delta) with 95% confidence"""
        return self.ci_high < delta

    def to_dict(self) -> Dict[str, Any]:
        return json_safe(asdict(self))


@dataclass
class InequalityReport:
    name: str
    holds: int
    total: int
    slack: float
    required_fraction: float
    passed: bool
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def violation_fraction(self) -> float:
        return 0.0 if self.total == 0 else 1.0 - self.holds / self.total

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["violation_fraction"] = self.violation_fraction
        return json_safe(data)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return json_safe(asdict(self))


@dataclass
class ExperimentReport:
    experiment_id: str
    parameters: Dict[str, Any]
    stages: List[Dict[str, Any]]
    seeds: List[int]
    failures: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    runtime_seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        # runtime is kept out of the payload so reruns are byte-identical
        return json_safe({
            "schema_version": SCHEMA_VERSION,
            "experiment_id": self.experiment_id,
            "parameters": self.parameters,
            "stages": self.stages,
            "seeds": self.seeds,
            "failures": self.failures,
            "summary": self.summary,
        })
