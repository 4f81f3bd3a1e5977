"""
Full shift - product metric d(x,y) = sum_n 2^-|n| rho/(1+rho) and the shift map T
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .alphabet import AlphabetSpec, DomainError
from .sequence import BilateralSequence

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
METRIC_BOUND = 3.0


def metric_depth(tol: float) -> int:
    """Truncation depth N with tail sum_{|n|>N} 2^-|n| rho/(1+rho) < 2 * 2^-N <= tol / 2"""
    if not tol > 0:
        raise DomainError(f"Metric tolerance must be positive, got {tol}")
    return max(1, math.ceil(math.log2(4.0 / tol)))


def tail_bound(depth: int) -> float:
    return 2.0 * 2.0 ** -depth


def coordinate_weights(depth: int) -> Tuple[np.ndarray, np.ndarray]:
    """Indices -N..N and their weights 2^-|n|"""
    indices = np.arange(-depth, depth + 1, dtype=np.int64)
    return indices, 2.0 ** -np.abs(indices).astype(np.float64)


def contributions(alphabet: AlphabetSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """rho/(1+rho), elementwise"""
    rho = alphabet.metric_array(a, b)
    return rho / (1.0 + rho)


def window_distances(alphabet: AlphabetSpec, center: np.ndarray, windows: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Truncated metric from one window to each row of a (count, width) array"""
    return contributions(alphabet, windows, center[None, :]) @ weights


def product_metric(x: BilateralSequence, y: BilateralSequence, tol: float = DEFAULT_TOLERANCE) -> float:
    """d(x,y) within tol, truncating at N = ceil(log2(4/tol))"""
    if x.alphabet != y.alphabet:
        raise DomainError(f"Mismatched alphabets: {x.alphabet} vs {y.alphabet}")
    depth = metric_depth(tol)
    _, weights = coordinate_weights(depth)
    terms = contributions(x.alphabet, x.window(-depth, depth), y.window(-depth, depth))
    return float(terms @ weights)


def shift(x: BilateralSequence, k: int = 1) -> BilateralSequence:
    """T^k x with (T^k x)_i = x_{i-k}"""
    return x.shifted(k)


@dataclass(frozen=True)
class ShiftSystem:
    """The full shift over an alphabet with its Lipschitz constants"""

    alphabet: AlphabetSpec
    lipschitz_forward: float = 2.0
    lipschitz_backward: float = 2.0
    metric_tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.lipschitz_forward < 1 or self.lipschitz_backward < 1:
            raise DomainError("Lipschitz constants must be >= 1")
        if not self.metric_tolerance > 0:
            raise DomainError("metric_tolerance must be positive")

    @property
    def depth(self) -> int:
        return metric_depth(self.metric_tolerance)

    def distance(self, x: BilateralSequence, y: BilateralSequence, tol: Optional[float] = None) -> float:
        for point in (x, y):
            if point.alphabet != self.alphabet:
                raise DomainError(f"Sequence over {point.alphabet} used in system over {self.alphabet}")
        return product_metric(x, y, tol or self.metric_tolerance)

    def forward(self, x: BilateralSequence, times: int = 1) -> BilateralSequence:
        return shift(x, times)

    def backward(self, x: BilateralSequence, times: int = 1) -> BilateralSequence:
        return shift(x, -times)
