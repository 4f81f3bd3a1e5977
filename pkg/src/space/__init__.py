# Sequence space package
from .alphabet import AlphabetSpec, DomainError, base_metric
from .sequence import BilateralSequence
from .shift import ShiftSystem, metric_depth, product_metric, shift, tail_bound
from .streams import derive_seed, substream

__all__ = [
    "AlphabetSpec", "DomainError", "base_metric",
    "BilateralSequence",
    "ShiftSystem", "metric_depth", "product_metric", "shift", "tail_bound",
    "derive_seed", "substream",
]
