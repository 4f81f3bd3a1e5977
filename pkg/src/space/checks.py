"""
Metric checks - metric axioms, truncation soundness and Lipschitz bounds on sampled pairs
"""
import logging
from typing import List, Tuple

import numpy as np

from ..schemas.results import CheckResult
from .alphabet import AlphabetSpec
from .sequence import BilateralSequence
from .shift import METRIC_BOUND, ShiftSystem, metric_depth, product_metric, shift, tail_bound
from .streams import derive_seed, substream

logger = logging.getLogger(__name__)

Pair = Tuple[BilateralSequence, BilateralSequence]


def _perturbed(x: BilateralSequence, rng: np.random.Generator, side: int) -> BilateralSequence:
    """Copy of x changed at a few coordinates on one side of the origin"""
    alphabet = x.alphabet
    count = int(rng.integers(1, 4))
    positions = side * rng.integers(1, 12, size=count)
    if alphabet.is_finite:
        symbols = [(x.coordinate(int(n)) + int(rng.integers(1, max(alphabet.size, 2)))) % max(alphabet.size, 1)
                   for n in positions]
    else:
        symbols = rng.random(count).tolist()
    return x.with_coordinates(dict(zip(positions.tolist(), symbols)))


def sample_pairs(alphabet: AlphabetSpec, count: int, seed: int) -> List[Pair]:
    """Independent pairs mixed with one-sided perturbations (the latter witness Lambda = 2)"""
    rng = substream(seed, "pairs")
    pairs: List[Pair] = []
    for i in range(count):
        x = BilateralSequence.iid(alphabet, derive_seed(seed, "x", i),
                                  None if not alphabet.is_finite else np.full(alphabet.size, 1.0 / alphabet.size))
        kind = i % 4
        if kind < 2:
            y = BilateralSequence.iid(alphabet, derive_seed(seed, "y", i),
                                      None if not alphabet.is_finite else np.full(alphabet.size, 1.0 / alphabet.size))
        else:
            y = _perturbed(x, rng, -1 if kind == 2 else 1)
        pairs.append((x, y))
    return pairs


def metric_axioms_check(alphabet: AlphabetSpec, count: int, seed: int, tol: float) -> List[CheckResult]:
    """Nonnegativity, symmetry, triangle inequality, the bound d <= 3 and truncation soundness"""
    pairs = sample_pairs(alphabet, count, seed)
    depth = metric_depth(tol)
    triangle_failures = symmetry_failures = bound_failures = truncation_failures = 0
    worst_triangle = 0.0
    for i, (x, y) in enumerate(pairs):
        z = pairs[(i + 1) % len(pairs)][1]
        dxy, dyx = product_metric(x, y, tol), product_metric(y, x, tol)
        dxz, dzy = product_metric(x, z, tol), product_metric(z, y, tol)
        if abs(dxy - dyx) > tol or dxy < 0:
            symmetry_failures += 1
        excess = dxy - (dxz + dzy)
        worst_triangle = max(worst_triangle, excess)
        if excess > 3 * tol:
            triangle_failures += 1
        if dxy > METRIC_BOUND + tol:
            bound_failures += 1
        # deeper truncation may only add the certified tail
        deeper = product_metric(x, y, tol / 64)
        if abs(deeper - dxy) > tail_bound(depth):
            truncation_failures += 1
    return [
        CheckResult("metric.symmetry", symmetry_failures == 0, {"failures": symmetry_failures, "pairs": count}),
        CheckResult("metric.triangle", triangle_failures == 0,
                    {"failures": triangle_failures, "worst_excess": worst_triangle, "tolerance": 3 * tol}),
        CheckResult("metric.bound", bound_failures == 0, {"failures": bound_failures, "bound": METRIC_BOUND}),
        CheckResult("metric.truncation", truncation_failures == 0, {"failures": truncation_failures, "depth": depth}),
    ]


def agreement_tail_check(alphabet: AlphabetSpec, depths: List[int], seed: int, tol: float) -> CheckResult:
    """Sequences agreeing on |n| <= N lie within 2^-N of each other"""
    failures = []
    for N in depths:
        x = BilateralSequence.iid(alphabet, derive_seed(seed, "agree-x", N),
                                  None if not alphabet.is_finite else np.full(alphabet.size, 1.0 / alphabet.size))
        y = BilateralSequence.iid(alphabet, derive_seed(seed, "agree-y", N),
                                  None if not alphabet.is_finite else np.full(alphabet.size, 1.0 / alphabet.size))
        y = y.with_coordinates({n: x.coordinate(n) for n in range(-N, N + 1)})
        d = product_metric(x, y, tol)
        if d > 2.0 ** -N + tol:
            failures.append({"N": N, "distance": d})
    return CheckResult("metric.agreement_tail", not failures, {"failures": failures})


def lipschitz_check(system: ShiftSystem, pairs: List[Pair], tol: float) -> List[CheckResult]:
    """d(T^{+-1}x, T^{+-1}y) <= Lambda d(x,y) + 3 tol, and some pair nearly attains Lambda"""
    results = []
    for label, step, constant in (("forward", 1, system.lipschitz_forward), ("backward", -1, system.lipschitz_backward)):
        violations = 0
        best_ratio = 0.0
        for x, y in pairs:
            d = product_metric(x, y, tol)
            image = product_metric(shift(x, step), shift(y, step), tol)
            if image > constant * d + 3 * tol:
                violations += 1
            if d > 1e3 * tol:
                best_ratio = max(best_ratio, image / d)
        logger.debug("Lipschitz %s: violations=%d best_ratio=%.4f", label, violations, best_ratio)
        results.append(CheckResult(f"shift.lipschitz_{label}", violations == 0,
                                   {"violations": violations, "pairs": len(pairs), "constant": constant}))
        results.append(CheckResult(f"shift.tightness_{label}", best_ratio >= 0.995 * constant,
                                   {"best_ratio": best_ratio}))
    return results
