# Dimension package
from .grid import ScaleGrid
from .local import local_dims, measure_dims, local_entropy, anchored_quotients
from .packing import (
    PackingSizeError, pairwise_distances,
    greedy_packing, brute_force_packing, greedy_cover_value,
)

__all__ = [
    "ScaleGrid", "local_dims", "measure_dims", "local_entropy", "anchored_quotients",
    "PackingSizeError", "pairwise_distances",
    "greedy_packing", "brute_force_packing", "greedy_cover_value",
]
