"""
Packing and covering - finite-sample estimators of the radius packing premeasure and Hausdorff sums
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..schemas.results import PackingCoverResult
from ..space.alphabet import DomainError
from ..space.sequence import BilateralSequence
from ..space.shift import product_metric

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 12
PACKING = "packing"
COVER = "cover"


class PackingSizeError(ValueError):
    """Raised when an exhaustive search is asked for more points than it accepts"""


Candidate = Tuple[int, float]


def pairwise_distances(points: Sequence[BilateralSequence], tol: float = 1e-12) -> np.ndarray:
    n = len(points)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i, j] = matrix[j, i] = product_metric(points[i], points[j], tol)
    return matrix


def _resolve_distances(points: Optional[Sequence[BilateralSequence]], distances: Optional[np.ndarray],
                       tol: float) -> np.ndarray:
    if distances is not None:
        matrix = np.asarray(distances, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DomainError(f"Distance matrix must be square, got shape {matrix.shape}")
        return matrix
    return pairwise_distances(list(points or []), tol)


def _check_packing_args(alpha: float, delta: float, radius_grid: Sequence[float]) -> List[float]:
    if alpha < 0 or not delta > 0:
        raise DomainError(f"Need alpha >= 0 and delta > 0, got alpha={alpha}, delta={delta}")
    radii = sorted(float(r) for r in radius_grid)
    if not radii or radii[0] <= 0 or radii[-1] > delta / 2 + 1e-15:
        raise DomainError(f"Radii must lie in (0, delta/2], got {list(radius_grid)}")
    return radii


def _witness(chosen: Sequence[Candidate]) -> List[Dict[str, float]]:
    return [{"center": i, "radius": r} for i, r in sorted(chosen)]


def _compatible(matrix: np.ndarray, a: Candidate, b: Candidate) -> bool:
    """Conservative disjointness d(c_a, c_b) > r_a + r_b"""
    return a[0] != b[0] and matrix[a[0], b[0]] > a[1] + b[1]


def greedy_packing(points: Optional[Sequence[BilateralSequence]], alpha: float, delta: float,
                   radius_grid: Sequence[float], distances: Optional[np.ndarray] = None,
                   tol: float = 1e-12) -> PackingCoverResult:
    """Lower bound for P^alpha_delta: max-weight independent set heuristic on the ball conflict graph.

    Picks the candidate ball with the largest weight/(degree+1), drops its conflicts, repeats,
    then grows each chosen radius as far as the grid and the other balls allow.
    """
    radii = _check_packing_args(alpha, delta, radius_grid)
    matrix = _resolve_distances(points, distances, tol)
    candidates = [(i, r) for i in range(matrix.shape[0]) for r in radii]
    if not candidates:
        return PackingCoverResult(0.0, [], alpha, delta, PACKING, False)
    weight = np.array([(2 * r) ** alpha for _, r in candidates])
    size = len(candidates)
    conflict = np.zeros((size, size), dtype=bool)
    for a in range(size):
        for b in range(a + 1, size):
            conflict[a, b] = conflict[b, a] = not _compatible(matrix, candidates[a], candidates[b])

    alive = np.ones(size, dtype=bool)
    chosen: List[Candidate] = []
    while alive.any():
        degree = (conflict & alive[None, :]).sum(axis=1)
        score = np.where(alive, weight / (degree + 1), -np.inf)
        best = int(np.argmax(score))  # first index wins ties
        chosen.append(candidates[best])
        alive &= ~conflict[best]
        alive[best] = False

    for position, (i, r) in enumerate(chosen):
        others = chosen[:position] + chosen[position + 1:]
        for larger in reversed(radii):
            if larger <= r:
                break
            if all(_compatible(matrix, (i, larger), other) for other in others):
                chosen[position] = (i, larger)
                break

    value = float(sum((2 * r) ** alpha for _, r in chosen))
    logger.debug("Greedy packing: %d balls, value=%.6g", len(chosen), value)
    return PackingCoverResult(value, _witness(chosen), alpha, delta, PACKING, False)


def brute_force_packing(points: Optional[Sequence[BilateralSequence]], alpha: float, delta: float,
                        radius_grid: Sequence[float], distances: Optional[np.ndarray] = None,
                        tol: float = 1e-12) -> PackingCoverResult:
    """Exact optimum over all subsets and grid radius assignments"""
    radii = _check_packing_args(alpha, delta, radius_grid)
    matrix = _resolve_distances(points, distances, tol)
    n = matrix.shape[0]
    if n > BRUTE_FORCE_LIMIT:
        raise PackingSizeError(f"Brute-force packing accepts at most {BRUTE_FORCE_LIMIT} points, got {n}")
    best_ball = (2 * radii[-1]) ** alpha
    best = {"value": 0.0, "chosen": []}

    def search(i: int, chosen: List[Candidate], value: float):
        if value > best["value"]:
            best["value"], best["chosen"] = value, list(chosen)
        if i == n or value + (n - i) * best_ball <= best["value"]:
            return
        for r in reversed(radii):
            candidate = (i, r)
            if all(_compatible(matrix, candidate, other) for other in chosen):
                chosen.append(candidate)
                search(i + 1, chosen, value + (2 * r) ** alpha)
                chosen.pop()
        search(i + 1, chosen, value)

    search(0, [], 0.0)
    return PackingCoverResult(float(best["value"]), _witness(best["chosen"]), alpha, delta, PACKING, True)


def greedy_cover_value(points: Optional[Sequence[BilateralSequence]], alpha: float, delta: float,
                       mode: str = "balls", distances: Optional[np.ndarray] = None,
                       tol: float = 1e-12) -> PackingCoverResult:
    """Upper-bound proxy for H^alpha_delta: sum of diam^alpha over a greedy delta-cover.

    mode "singletons" covers each point by itself; mode "balls" grows groups first-fit while
    the group diameter stays <= delta.
    """
    if alpha < 0 or not delta > 0:
        raise DomainError(f"Need alpha >= 0 and delta > 0, got alpha={alpha}, delta={delta}")
    matrix = _resolve_distances(points, distances, tol)
    n = matrix.shape[0]
    if mode == "singletons":
        groups = [[i] for i in range(n)]
    elif mode == "balls":
        groups: List[List[int]] = []
        for i in range(n):
            for group in groups:
                if matrix[i, group].max() <= delta:
                    group.append(i)
                    break
            else:
                groups.append([i])
    else:
        raise DomainError(f"Unknown cover mode: {mode!r}")
    diameters = [float(matrix[np.ix_(g, g)].max()) for g in groups]
    value = float(sum(d ** alpha for d in diameters))
    witness = [{"members": g, "diameter": d} for g, d in zip(groups, diameters)]
    return PackingCoverResult(value, witness, alpha, delta, COVER, False)
