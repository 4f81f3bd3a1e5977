"""
Interval statistics - Wilson intervals and normal intervals for Monte Carlo means
"""
import math
from typing import Tuple

import numpy as np
from scipy.stats import norm

CONFIDENCE = 0.95


def z_value(confidence: float = CONFIDENCE) -> float:
    return float(norm.ppf(1 - (1 - confidence) / 2))


def wilson_interval(successes: float, trials: int, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """Wilson score interval; successes may be fractional for [0,1]-valued samples"""
    if trials <= 0:
        return 0.0, 1.0
    z = z_value(confidence)
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(max(p * (1 - p), 0.0) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def standard_error(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        return 0.0
    return float(np.std(x, ddof=1) / np.sqrt(x.size))


def mean_interval(x: np.ndarray, confidence: float = CONFIDENCE) -> Tuple[float, float, float]:
    """(mean, low, high) from the normal approximation"""
    x = np.asarray(x, dtype=float)
    mean = float(x.mean()) if x.size else 0.0
    half = z_value(confidence) * standard_error(x)
    return mean, mean - half, mean + half
