# Measures package
from .models import (
    MeasureModel, BernoulliProduct, PeriodicOrbit, NoisyPeriodization, Mixture,
    build_model, sample_point, analytic_entropy, orbit_separation,
)
from .ball_mass import ball_mass, mollifier_value, mollified_mass
from .dynamical import dynamical_ball_mass

__all__ = [
    "MeasureModel", "BernoulliProduct", "PeriodicOrbit", "NoisyPeriodization", "Mixture",
    "build_model", "sample_point", "analytic_entropy", "orbit_separation",
    "ball_mass", "mollifier_value", "mollified_mass", "dynamical_ball_mass",
]
