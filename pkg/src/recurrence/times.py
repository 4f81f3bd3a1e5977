"""
Return times - first returns, first entrances and dynamical-ball returns along an orbit
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..space.alphabet import DomainError
from ..space.sequence import BilateralSequence
from ..space.shift import contributions, metric_depth

logger = logging.getLogger(__name__)

FIRST_CHUNK = 256
MAX_CHUNK = 1 << 16

# (offset i, coordinates of the target T^i y over -N..N)
Target = Tuple[int, np.ndarray]


def _membership_tolerance(r: float, tol: Optional[float]) -> float:
    if not r > 0:
        raise DomainError(f"Radius must be positive, got {r}")
    return r / 100 if tol is None else min(tol, r / 100)


def _check_horizon(horizon: int):
    if horizon < 1:
        raise DomainError(f"Horizon must be >= 1, got {horizon}")


def _signed_positions(depth: int) -> List[Tuple[int, float]]:
    """(m, 2^-|m|) by decreasing weight, so large terms prune candidates first"""
    order = [(0, 1.0)]
    for k in range(1, depth + 1):
        order.extend(((-k, 2.0 ** -k), (k, 2.0 ** -k)))
    return order


def _surviving(x: BilateralSequence, xs: np.ndarray, base: int, ks: np.ndarray, offset: int, target: np.ndarray,
               order: List[Tuple[int, float]], depth: int, threshold: float) -> np.ndarray:
    """Shifts k whose truncated d(T^(k+offset) x, target) stays within threshold"""
    partial = np.zeros(ks.size)
    for m, w in order:
        values = xs[m - offset - ks - base]
        partial += w * contributions(x.alphabet, values, target[m + depth])
        keep = partial <= threshold
        if not keep.all():
            ks, partial = ks[keep], partial[keep]
            if ks.size == 0:
                break
    return ks


def _first_hit(x: BilateralSequence, targets: Sequence[Target], depth: int, threshold: float,
               horizon: int) -> Optional[int]:
    """Least k in [1, horizon] with T^(k+i) x within threshold of every target i, else None"""
    order = _signed_positions(depth)
    max_offset = max(offset for offset, _ in targets)
    k0, chunk = 1, FIRST_CHUNK
    while k0 <= horizon:
        k1 = min(horizon + 1, k0 + chunk)
        base = -depth - (k1 - 1) - max_offset
        xs = x.window(base, depth - k0)
        ks = np.arange(k0, k1, dtype=np.int64)
        for offset, target in targets:
            ks = _surviving(x, xs, base, ks, offset, target, order, depth, threshold)
            if ks.size == 0:
                break
        if ks.size:
            return int(ks.min())
        # blocks above the next window are done for this search; the origin stays cached for later radii
        x.release_between(depth - k1 + 1, -depth - max_offset - FIRST_CHUNK - 1)
        k0, chunk = k1, min(chunk * 2, MAX_CHUNK)
    return None


def entrance_time(x: BilateralSequence, y: BilateralSequence, r: float, horizon: int,
                  tol: Optional[float] = None) -> Optional[int]:
    """tau_r(x, y) = least k >= 1 with T^k x in the closed ball B(y, r); None when censored"""
    _check_horizon(horizon)
    if x.alphabet != y.alphabet:
        raise DomainError(f"Mismatched alphabets: {x.alphabet} vs {y.alphabet}")
    slack = _membership_tolerance(r, tol)
    depth = metric_depth(slack)
    return _first_hit(x, [(0, y.window(-depth, depth))], depth, r + slack, horizon)


def return_time(x: BilateralSequence, r: float, horizon: int, tol: Optional[float] = None) -> Optional[int]:
    """tau_r(x) = tau_r(x, x)"""
    return entrance_time(x, x, r, horizon, tol)


def dynamical_return_time(x: BilateralSequence, n: int, eps: float, horizon: int,
                          tol: Optional[float] = None) -> Optional[int]:
    """R_n(x, eps) = least k >= 1 with d(T^(k+i) x, T^i x) <= eps for all 0 <= i < n"""
    if n < 1:
        raise DomainError(f"Dynamical ball length must be >= 1, got {n}")
    _check_horizon(horizon)
    slack = _membership_tolerance(eps, tol)
    depth = metric_depth(slack)
    targets = [(i, x.window(-depth - i, depth - i)) for i in range(n)]
    return _first_hit(x, targets, depth, eps + slack, horizon)


def return_entropy_rate(x: BilateralSequence, n: int, eps: float, horizon: int,
                        tol: Optional[float] = None) -> Optional[float]:
    """(1/n) log R_n(x, eps); None when the return is censored"""
    time = dynamical_return_time(x, n, eps, horizon, tol)
    return None if time is None else math.log(time) / n


def recurrence_entropy_profile(x: BilateralSequence, ns: Sequence[int], eps: float, horizon: int,
                               tol: Optional[float] = None) -> List[Dict[str, object]]:
    """Return-time entropy estimates for several ball lengths; censored rows carry log(horizon)/n"""
    rows = []
    for n in ns:
        time = dynamical_return_time(x, n, eps, horizon, tol)
        censored = time is None
        rate = math.log(horizon) / n if censored else math.log(time) / n
        rows.append({"n": int(n), "time": time, "rate": rate, "censored": censored})
        logger.debug("Entropy profile n=%d time=%s", n, time)
    return rows
