from .test_functions import CoordinateMoment, LaggedProduct, WindowMollifier, TestFunctionFamily, default_family
from .genericity import periodize, weak_distance
from .experiments import ExperimentBudgets, run_experiment, run_hd_collapse, run_pd_blowup

__all__ = [
    "CoordinateMoment", "LaggedProduct", "WindowMollifier", "TestFunctionFamily", "default_family",
    "periodize", "weak_distance",
    "ExperimentBudgets", "run_experiment", "run_hd_collapse", "run_pd_blowup",
]
