"""
Source Module - Main package exports
"""
from .space import AlphabetSpec, BilateralSequence, ShiftSystem, product_metric
from .measures import build_model, sample_point, ball_mass
from .schemas import ExperimentState, ExperimentReport

__all__ = [
    "AlphabetSpec",
    "BilateralSequence",
    "ShiftSystem",
    "product_metric",
    "build_model",
    "sample_point",
    "ball_mass",
    "ExperimentState",
    "ExperimentReport",
]
