# Recurrence package
from .times import (
    return_time, entrance_time, dynamical_return_time,
    return_entropy_rate, recurrence_entropy_profile,
)
from .rates import recurrence_rates, waiting_rates, rates_from_times
from .checks import barreira_saussol_check, galatolo_check, dynamical_return_check

__all__ = [
    "return_time", "entrance_time", "dynamical_return_time",
    "return_entropy_rate", "recurrence_entropy_profile",
    "recurrence_rates", "waiting_rates", "rates_from_times",
    "barreira_saussol_check", "galatolo_check", "dynamical_return_check",
]
