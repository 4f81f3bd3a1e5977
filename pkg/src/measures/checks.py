"""
Measure checks - mollifier sandwich around ball masses and shift invariance of mollified masses
"""
import logging
from typing import List, Sequence

from ..schemas.results import CheckResult
from ..space.alphabet import AlphabetSpec
from ..space.shift import shift
from ..space.streams import derive_seed, substream
from .ball_mass import DEFAULT_TOLERANCE, ball_mass, mollified_mass
from .models import BernoulliProduct, MeasureModel

logger = logging.getLogger(__name__)

MAX_VIOLATION_FRACTION = 0.05
RADIUS_EXPONENTS = (1, 2, 3, 4)
EXACT_RELATIVE_ERROR = 1e-3


def _instances(models: Sequence[MeasureModel], count: int, seed: int):
    rng = substream(seed, "instances")
    for i in range(count):
        model = models[i % len(models)]
        eps = 2.0 ** -int(rng.choice(RADIUS_EXPONENTS))
        yield i, model, model.sample_point(derive_seed(seed, "x", i)), eps


def sandwich_check(models: Sequence[MeasureModel], count: int, budget: int, seed: int = 0,
                   tol: float = DEFAULT_TOLERANCE, inverted: bool = False) -> CheckResult:
    """f_{x,eps/2}(mu) <= mu(B(x,eps)) <= f_{x,2eps}(mu), each side judged on 95% intervals.

    inverted=True asserts the reversed ordering, which real models violate; the verification
    runner uses it to show the suite notices a broken inequality.
    """
    violations: List[dict] = []
    for i, model, x, eps in _instances(models, count, seed):
        low = mollified_mass(model, x, eps / 2, budget, derive_seed(seed, "low", i))
        mid = ball_mass(model, x, eps, tol, budget, derive_seed(seed, "mid", i))
        high = mollified_mass(model, x, 2 * eps, budget, derive_seed(seed, "high", i))
        if inverted:
            ok = low.ci_low > mid.ci_high and mid.ci_low > high.ci_high
        else:
            ok = low.ci_low <= mid.ci_high and mid.ci_low <= high.ci_high
        if not ok:
            violations.append({"instance": i, "model": model.kind, "eps": eps,
                               "low": low.mean, "mass": mid.mean, "high": high.mean})
    fraction = len(violations) / count if count else 0.0
    logger.info("sandwich: %d/%d violations", len(violations), count)
    return CheckResult("measures.sandwich", count > 0 and fraction <= MAX_VIOLATION_FRACTION,
                       {"instances": count, "violation_fraction": fraction, "violations": violations[:10]})


def shift_invariance_check(models: Sequence[MeasureModel], count: int, budget: int, seed: int = 0,
                           lipschitz: float = 2.0) -> CheckResult:
    """f_{x,eps/Lambda}(mu) <= f_{Tx,eps}(mu) for invariant mu, judged on 95% intervals"""
    failures = 0
    for i, model, x, eps in _instances(models, count, seed):
        inner = mollified_mass(model, x, eps / lipschitz, budget, derive_seed(seed, "inner", i))
        outer = mollified_mass(model, shift(x), eps, budget, derive_seed(seed, "outer", i))
        failures += int(inner.ci_low > outer.ci_high)
    fraction = failures / count if count else 0.0
    return CheckResult("measures.shift_invariance", count > 0 and fraction <= MAX_VIOLATION_FRACTION,
                       {"instances": count, "violation_fraction": fraction})


def exact_mass_check(depths: Sequence[int] = (1, 2, 3, 4, 5, 6)) -> CheckResult:
    """Bernoulli(1/2,1/2) masses at radius 2^-N equal 2^-2N at every point"""
    model = BernoulliProduct(AlphabetSpec.finite(2), [0.5, 0.5])
    worst = 0.0
    for k, n in enumerate(depths):
        x = model.sample_point(k)
        estimate = ball_mass(model, x, 2.0 ** -n)
        worst = max(worst, abs(estimate.mean - 2.0 ** (-2 * n)) / 2.0 ** (-2 * n))
    return CheckResult("measures.exact_bernoulli", worst <= EXACT_RELATIVE_ERROR, {"relative_error": worst})
