# Schemas package
from .experiment_state import ExperimentState
from .results import (
    SCHEMA_VERSION, json_safe,
    BallMassEstimate, LocalDimEstimate, DimensionReport, PackingCoverResult,
    RateEstimate, WeakDistance, InequalityReport, CheckResult, ExperimentReport,
)

__all__ = [
    "ExperimentState", "SCHEMA_VERSION", "json_safe",
    "BallMassEstimate", "LocalDimEstimate", "DimensionReport", "PackingCoverResult",
    "RateEstimate", "WeakDistance", "InequalityReport", "CheckResult", "ExperimentReport",
]
