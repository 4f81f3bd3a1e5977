"""
Verification suites - property checks per package, run by `verify <suite>`
"""
import logging
import statistics
from typing import Callable, Dict, List

import numpy as np

from ..config import ConfigError, VERIFY_SUITES, get_injected_fault
from ..dimension.grid import ScaleGrid
from ..dimension.local import measure_dims
from ..dimension.packing import brute_force_packing, greedy_packing
from ..lab.genericity import periodize, weak_distance
from ..lab.test_functions import CoordinateMoment, TestFunctionFamily
from ..measures.checks import exact_mass_check, sandwich_check, shift_invariance_check
from ..measures.models import BernoulliProduct, NoisyPeriodization, PeriodicOrbit, orbit_separation
from ..recurrence.checks import barreira_saussol_check, dynamical_return_check
from ..recurrence.rates import DEFAULT_RATE_GRID, recurrence_rates
from ..schemas import CheckResult
from ..space.alphabet import AlphabetSpec
from ..space.checks import agreement_tail_check, lipschitz_check, metric_axioms_check, sample_pairs
from ..space.shift import ShiftSystem
from ..space.streams import derive_seed, substream

logger = logging.getLogger(__name__)

METRIC_PAIRS = 1000
METRIC_TOLERANCE = 1e-9
SANDWICH_INSTANCES = 200
CHECK_BUDGET = 2000
PACKING_INSTANCES = 200
PACKING_AGREEMENT = 0.6
COLLAPSE_THRESHOLD = 0.05
NOISE_BLOCK = [0.1, 0.5, 0.9]
COIN_RATE_POINTS = 50
COIN_RATE_HORIZON = 10 ** 7
COIN_RATE_RANGE = (1.5, 2.5)


def _coin() -> BernoulliProduct:
    return BernoulliProduct(AlphabetSpec.finite(2), [0.5, 0.5])


def _periodic_eight(seed: int) -> PeriodicOrbit:
    return periodize(BernoulliProduct(AlphabetSpec.interval()), 8, derive_seed(seed, "periodic-eight"))


def _labelled(results: List[CheckResult], label: str) -> List[CheckResult]:
    return [CheckResult(f"{r.name}[{label}]", r.passed, r.detail) for r in results]


# =============================================================================
# SUITES
# =============================================================================

def metric_suite(seed: int) -> List[CheckResult]:
    results = []
    for label, alphabet in (("finite2", AlphabetSpec.finite(2)), ("finite5", AlphabetSpec.finite(5)),
                            ("interval", AlphabetSpec.interval())):
        checks = metric_axioms_check(alphabet, METRIC_PAIRS, seed, METRIC_TOLERANCE)
        checks.append(agreement_tail_check(alphabet, [1, 2, 4, 8, 16], seed, METRIC_TOLERANCE))
        checks += lipschitz_check(ShiftSystem(alphabet), sample_pairs(alphabet, METRIC_PAIRS, seed), METRIC_TOLERANCE)
        results += _labelled(checks, label)
    return results


def measures_suite(seed: int) -> List[CheckResult]:
    models = [_coin(), BernoulliProduct(AlphabetSpec.interval()), _periodic_eight(seed),
              NoisyPeriodization(NOISE_BLOCK, 0.05)]
    inverted = get_injected_fault() == "sandwich"
    if inverted:
        logger.warning("Fault injected: sandwich comparison reversed")
    return [
        sandwich_check(models, SANDWICH_INSTANCES, CHECK_BUDGET, seed, inverted=inverted),
        shift_invariance_check(models, SANDWICH_INSTANCES // 4, CHECK_BUDGET, seed),
        exact_mass_check(),
    ]


def _packing_checks(seed: int) -> List[CheckResult]:
    three = np.array([[0.0, 0.2, 0.5], [0.2, 0.0, 0.3], [0.5, 0.3, 0.0]])
    brute = brute_force_packing(None, 1.0, 0.2, [0.05, 0.1], distances=three)
    greedy = greedy_packing(None, 1.0, 0.2, [0.05, 0.1], distances=three)
    results = [CheckResult("dimension.packing_three_points", abs(brute.value - 0.5) < 1e-12 and greedy.value <= brute.value,
                           {"brute_force": brute.value, "greedy": greedy.value})]

    rng = substream(seed, "packing-instances")
    dominated = agreements = 0
    for _ in range(PACKING_INSTANCES):
        n = int(rng.integers(2, 11))
        coords = rng.random((n, 2))
        matrix = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(axis=-1))
        spread = float(np.median(matrix[np.triu_indices(n, 1)]))
        radii = sorted(rng.uniform(0.1, 0.6, size=2) * spread)
        delta = 2 * radii[-1]
        alpha = float(rng.uniform(0.5, 2.0))
        exact = brute_force_packing(None, alpha, delta, radii, distances=matrix).value
        heuristic = greedy_packing(None, alpha, delta, radii, distances=matrix).value
        dominated += int(exact >= heuristic - 1e-12)
        agreements += int(abs(exact - heuristic) <= 1e-12 * max(1.0, exact))
    results.append(CheckResult("dimension.packing_dominance", dominated == PACKING_INSTANCES,
                               {"instances": PACKING_INSTANCES, "dominated": dominated}))
    results.append(CheckResult("dimension.packing_agreement", agreements >= PACKING_AGREEMENT * PACKING_INSTANCES,
                               {"instances": PACKING_INSTANCES, "equal": agreements}))
    return results


def dimension_suite(seed: int) -> List[CheckResult]:
    periodic = _periodic_eight(seed)
    fine_grid = ScaleGrid(2.0 ** -4, 0.5, 17, 1)
    flat = measure_dims(periodic, 30, fine_grid, seed=derive_seed(seed, "periodic-dims"))
    coin = measure_dims(_coin(), 30, ScaleGrid(2.0 ** -2, 0.5, 12, 1), seed=derive_seed(seed, "coin-dims"))
    coin_values = [coin.dimH_minus, coin.dimH_plus, coin.dimP_minus, coin.dimP_plus]
    return [
        CheckResult("dimension.periodic_zero", flat.dimH_plus <= COLLAPSE_THRESHOLD and flat.dimP_plus <= COLLAPSE_THRESHOLD,
                    {"dimH_plus": flat.dimH_plus, "dimP_plus": flat.dimP_plus,
                     "orbit_separation": orbit_separation(periodic)}),
        CheckResult("dimension.coin_two", all(abs(v - 2.0) <= 0.25 for v in coin_values), {"values": coin_values}),
        CheckResult("dimension.entropy_bound", coin.dimP_minus >= 0.75, {"dimP_minus": coin.dimP_minus}),
    ] + _packing_checks(seed)


def recurrence_suite(seed: int) -> List[CheckResult]:
    periodic = _periodic_eight(seed)
    fine_grid = ScaleGrid(2.0 ** -4, 0.5, 17, 1)
    uppers = [recurrence_rates(periodic.sample_point(derive_seed(seed, "periodic-rate", i)), fine_grid, 64).upper
              for i in range(8)]

    coin = _coin()
    points = [coin.sample_point(derive_seed(seed, "dynamical", i)) for i in range(10)]
    dynamical = dynamical_return_check(points, [1, 2, 3, 4], 0.25, 2 ** 16)
    bs = barreira_saussol_check(coin, ScaleGrid(2.0 ** -1, 0.5, 8, 1), 30, 2 ** 20, derive_seed(seed, "bs"))
    lowers = [recurrence_rates(coin.sample_point(derive_seed(seed, "coin-rate", i)), DEFAULT_RATE_GRID,
                               COIN_RATE_HORIZON).lower for i in range(COIN_RATE_POINTS)]
    coin_median = statistics.median(lowers)
    return [
        CheckResult("recurrence.periodic_zero", max(uppers) <= COLLAPSE_THRESHOLD, {"upper_rates": uppers}),
        CheckResult("recurrence.dynamical_return", dynamical.passed, dynamical.to_dict()),
        CheckResult("recurrence.barreira_saussol", bs.passed, bs.to_dict()),
        CheckResult("recurrence.coin_rate", COIN_RATE_RANGE[0] <= coin_median <= COIN_RATE_RANGE[1],
                    {"median_lower": coin_median, "range": list(COIN_RATE_RANGE)}),
    ]


def genericity_suite(seed: int) -> List[CheckResult]:
    uniform = BernoulliProduct(AlphabetSpec.interval())
    distinct = periodize(uniform, 16, derive_seed(seed, "distinct"))
    binary = periodize(_coin(), 8, derive_seed(seed, "binary"))
    same = weak_distance(uniform, uniform, budget=4000, seed=seed)

    identity = TestFunctionFamily((CoordinateMoment(1, 0),))
    a = PeriodicOrbit(AlphabetSpec.interval(), [0.3])
    b = PeriodicOrbit(AlphabetSpec.interval(), [0.7])
    fixed = weak_distance(a, b, identity, budget=1000, seed=seed)

    base = PeriodicOrbit(AlphabetSpec.interval(), NOISE_BLOCK, distinct=True)
    noisy = [statistics.median(weak_distance(base, NoisyPeriodization(NOISE_BLOCK, eta), budget=4000,
                                             seed=derive_seed(seed, "noise", r)).value for r in range(5))
             for eta in (0.1, 0.01, 0.001)]
    return [
        CheckResult("genericity.periodize_distinct", distinct.distinct and distinct.period == 16,
                    {"period": distinct.period}),
        CheckResult("genericity.periodize_finite", not binary.distinct, {"period": binary.period}),
        CheckResult("genericity.self_distance", same.value == 0.0, same.to_dict()),
        CheckResult("genericity.fixed_points", abs(fixed.value - 0.4) < 1e-12, {"value": fixed.value}),
        CheckResult("genericity.noise_decreasing", noisy[0] > noisy[1] > noisy[2], {"medians": noisy}),
    ]


SUITES: Dict[str, Callable[[int], List[CheckResult]]] = {
    "metric": metric_suite,
    "measures": measures_suite,
    "dimension": dimension_suite,
    "recurrence": recurrence_suite,
    "genericity": genericity_suite,
}


def run_verification(suite: str, seed: int = 0) -> List[CheckResult]:
    """Run one suite, or every suite for "all"; unknown names raise ConfigError"""
    if suite not in VERIFY_SUITES:
        raise ConfigError(f"Unknown suite {suite!r}; expected one of {VERIFY_SUITES}")
    names = list(SUITES) if suite == "all" else [suite]
    results: List[CheckResult] = []
    for name in names:
        logger.info("Running %s suite", name)
        results += SUITES[name](seed)
    return results


def format_table(results: List[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=10)
    lines = [f"{'check'.ljust(width)}  result", f"{'-' * width}  ------"]
    lines += [f"{r.name.ljust(width)}  {'PASS' if r.passed else 'FAIL'}" for r in results]
    return "\n".join(lines)
