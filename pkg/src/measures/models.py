"""
Measure models - shift-invariant measures on the full shift and their samplers
"""
import logging
import math
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..space.alphabet import AlphabetSpec, DomainError
from ..space.sequence import WRAP_MODES, BilateralSequence, NoisySource, wrap_unit
from ..space.shift import contributions, coordinate_weights, metric_depth
from ..space.streams import CounterStream, derive_seed, substream

logger = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-12


def _check_weights(weights: Sequence[float], allow_zero: bool) -> np.ndarray:
    arr = np.asarray(weights, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"Weights must be a non-empty list, got {weights!r}")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or (not allow_zero and np.any(arr == 0)):
        raise DomainError(f"Invalid weights: {weights!r}")
    if abs(arr.sum() - 1.0) > WEIGHT_TOLERANCE:
        raise DomainError(f"Weights must sum to 1 (got {arr.sum()!r})")
    return arr


class MeasureModel(ABC):
    """A T-invariant Borel probability measure with a sampler"""

    kind: str = ""
    ergodic: bool = True

    def __init__(self, alphabet: AlphabetSpec):
        self.alphabet = alphabet

    @abstractmethod
    def sample_point(self, seed: int) -> BilateralSequence:
        """A mu-distributed point, deterministic given seed"""

    @abstractmethod
    def sample_window(self, rng: np.random.Generator, count: int, lo: int, hi: int) -> np.ndarray:
        """count independent draws of coordinates lo..hi, shape (count, hi - lo + 1)"""

    @abstractmethod
    def entropy(self) -> Optional[float]:
        """Kolmogorov-Sinai entropy, math.inf when infinite, None when unknown"""

    @abstractmethod
    def to_spec(self) -> Dict[str, Any]:
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_spec()})"


class BernoulliProduct(MeasureModel):
    """Product of a fixed marginal: categorical on a finite alphabet, uniform on [0,1]"""

    kind = "bernoulli"

    def __init__(self, alphabet: AlphabetSpec, weights: Optional[Sequence[float]] = None):
        super().__init__(alphabet)
        if alphabet.is_finite:
            if weights is None:
                weights = [1.0 / alphabet.size] * alphabet.size
            arr = _check_weights(weights, allow_zero=True)
            if arr.size != alphabet.size:
                raise DomainError(f"Expected {alphabet.size} weights, got {arr.size}")
            self.weights: Optional[np.ndarray] = arr
        else:
            if weights is not None:
                raise DomainError("Unit-interval Bernoulli products use the uniform marginal only")
            self.weights = None

    @property
    def uniform(self) -> bool:
        return self.weights is None

    def sample_point(self, seed: int) -> BilateralSequence:
        return BilateralSequence.iid(self.alphabet, derive_seed(seed, "point"), self.weights)

    def sample_window(self, rng: np.random.Generator, count: int, lo: int, hi: int) -> np.ndarray:
        u = rng.random((count, hi - lo + 1))
        if self.weights is None:
            return u
        symbols = np.searchsorted(np.cumsum(self.weights), u, side="right")
        return np.minimum(symbols, self.alphabet.size - 1).astype(np.int32)

    def entropy(self) -> Optional[float]:
        if self.weights is None:
            return math.inf
        p = self.weights[self.weights > 0]
        return float(-(p * np.log(p)).sum())

    def to_spec(self) -> Dict[str, Any]:
        spec = {"kind": self.kind, "alphabet": self.alphabet.to_spec()}
        if self.weights is not None:
            spec["weights"] = self.weights.tolist()
        return spec


class PeriodicOrbit(MeasureModel):
    """mu_x = (1/k) sum_{i<k} delta_{T^i x} for the periodic point x with the given block"""

    kind = "periodic"

    def __init__(self, alphabet: AlphabetSpec, block: Sequence[Any], distinct: bool = False):
        super().__init__(alphabet)
        self.block = alphabet.check_symbols(block)
        if self.block.ndim != 1 or self.block.size == 0:
            raise DomainError("Periodic block must hold at least one symbol")
        if distinct and np.unique(self.block).size != self.block.size:
            raise DomainError(f"Block symbols are not pairwise distinct: {self.block.tolist()}")
        self.distinct = bool(distinct)

    @property
    def period(self) -> int:
        return int(self.block.size)

    def base_point(self) -> BilateralSequence:
        return BilateralSequence.from_block(self.alphabet, self.block)

    def orbit_points(self) -> List[BilateralSequence]:
        base = self.base_point()
        return [base.shifted(i) for i in range(self.period)]

    def sample_point(self, seed: int) -> BilateralSequence:
        phase = int(substream(seed, "phase").integers(self.period))
        return self.base_point().shifted(phase)

    def sample_window(self, rng: np.random.Generator, count: int, lo: int, hi: int) -> np.ndarray:
        phases = rng.integers(self.period, size=count)
        index = np.mod(np.arange(lo, hi + 1)[None, :] - phases[:, None], self.period)
        return self.block[index]

    def entropy(self) -> Optional[float]:
        return 0.0

    def to_spec(self) -> Dict[str, Any]:
        return {"kind": self.kind, "alphabet": self.alphabet.to_spec(),
                "block": self.block.tolist(), "distinct": self.distinct}


class NoisyPeriodization(MeasureModel):
    """Random phase over the block plus i.i.d. uniform noise of total width eta"""

    kind = "noisy"

    def __init__(self, block: Sequence[float], eta: float, wrap: str = "reflect"):
        super().__init__(AlphabetSpec.interval())
        self.block = self.alphabet.check_symbols(block)
        if self.block.ndim != 1 or self.block.size == 0:
            raise DomainError("Periodic block must hold at least one symbol")
        if not 0.0 < eta < 1.0:
            raise DomainError(f"Noise width must lie in (0,1), got {eta}")
        if wrap not in WRAP_MODES:
            raise DomainError(f"Unknown wrap mode: {wrap!r}")
        self.eta = float(eta)
        self.wrap = wrap

    @property
    def period(self) -> int:
        return int(self.block.size)

    def sample_point(self, seed: int) -> BilateralSequence:
        phase = int(substream(seed, "phase").integers(self.period))
        source = NoisySource(tuple(self.block.tolist()), phase, self.eta, self.wrap,
                             CounterStream(derive_seed(seed, "noise")))
        return BilateralSequence(self.alphabet, source)

    def sample_window(self, rng: np.random.Generator, count: int, lo: int, hi: int) -> np.ndarray:
        # phases are drawn first so a PeriodicOrbit on the same rng sees the same phases
        phases = rng.integers(self.period, size=count)
        index = np.mod(np.arange(lo, hi + 1)[None, :] - phases[:, None], self.period)
        noise = (rng.random((count, hi - lo + 1)) - 0.5) * self.eta
        return wrap_unit(self.block[index] + noise, self.wrap)

    def entropy(self) -> Optional[float]:
        return math.inf

    def base(self) -> PeriodicOrbit:
        return PeriodicOrbit(self.alphabet, self.block, distinct=np.unique(self.block).size == self.block.size)

    def to_spec(self) -> Dict[str, Any]:
        return {"kind": self.kind, "block": self.block.tolist(), "eta": self.eta, "wrap": self.wrap}


class Mixture(MeasureModel):
    """Convex combination sum_i w_i mu_i over a common alphabet"""

    kind = "mixture"

    def __init__(self, weights: Sequence[float], components: Sequence[MeasureModel]):
        if not components:
            raise DomainError("Mixture needs at least one component")
        alphabet = components[0].alphabet
        if any(c.alphabet != alphabet for c in components):
            raise DomainError("Mixture components must share one alphabet")
        super().__init__(alphabet)
        self.weights = _check_weights(weights, allow_zero=True)
        if self.weights.size != len(components):
            raise DomainError(f"{self.weights.size} weights for {len(components)} components")
        self.components = list(components)
        active = [c for w, c in zip(self.weights, self.components) if w > 0]
        self.ergodic = len(active) == 1 and active[0].ergodic

    def _pick(self, u: np.ndarray) -> np.ndarray:
        index = np.searchsorted(np.cumsum(self.weights), u, side="right")
        return np.minimum(index, len(self.components) - 1)

    def sample_point(self, seed: int) -> BilateralSequence:
        u = substream(seed, "component").random()
        index = int(self._pick(np.asarray([u]))[0])
        return self.components[index].sample_point(derive_seed(seed, "component", index))

    def sample_window(self, rng: np.random.Generator, count: int, lo: int, hi: int) -> np.ndarray:
        choice = self._pick(rng.random(count))
        out = np.empty((count, hi - lo + 1), dtype=self.alphabet.dtype)
        for index, component in enumerate(self.components):
            rows = np.flatnonzero(choice == index)
            if rows.size:
                out[rows] = component.sample_window(rng, rows.size, lo, hi)
        return out

    def entropy(self) -> Optional[float]:
        total = 0.0
        for w, component in zip(self.weights, self.components):
            if w == 0:
                continue
            h = component.entropy()
            if h is None:
                return None
            total += w * h
        return total

    def to_spec(self) -> Dict[str, Any]:
        return {"kind": self.kind, "weights": self.weights.tolist(),
                "components": [c.to_spec() for c in self.components]}


# =============================================================================
# MODULE-LEVEL HELPERS
# =============================================================================

def build_model(spec: Dict[str, Any]) -> MeasureModel:
    """Build a model from its JSON spec"""
    if not isinstance(spec, dict):
        raise DomainError(f"Model spec must be an object, got {spec!r}")
    kind = spec.get("kind")
    if kind == "bernoulli":
        return BernoulliProduct(AlphabetSpec.from_spec(spec.get("alphabet", {"kind": "interval"})), spec.get("weights"))
    if kind == "periodic":
        return PeriodicOrbit(AlphabetSpec.from_spec(spec.get("alphabet", {"kind": "interval"})),
                             spec.get("block", []), bool(spec.get("distinct", False)))
    if kind == "noisy":
        return NoisyPeriodization(spec.get("block", []), float(spec.get("eta", 0.0)), spec.get("wrap", "reflect"))
    if kind == "mixture":
        return Mixture(spec.get("weights", []), [build_model(c) for c in spec.get("components", [])])
    raise DomainError(f"Unknown model kind: {kind!r}")


def sample_point(model: MeasureModel, seed: int) -> BilateralSequence:
    return model.sample_point(seed)


def analytic_entropy(model: MeasureModel) -> Optional[float]:
    """h_mu(T): finite value, math.inf, or None when unknown"""
    return model.entropy()


def orbit_windows(model: PeriodicOrbit, lo: int, hi: int) -> np.ndarray:
    """Coordinates lo..hi of every orbit point, shape (k, hi - lo + 1)"""
    index = np.mod(np.arange(lo, hi + 1)[None, :] - np.arange(model.period)[:, None], model.period)
    return model.block[index]


def orbit_separation(model: PeriodicOrbit, tol: float = 1e-12) -> float:
    """Minimum distance between distinct orbit points (inf for a fixed point)"""
    if model.period == 1:
        return math.inf
    depth = metric_depth(tol)
    _, weights = coordinate_weights(depth)
    windows = orbit_windows(model, -depth, depth)
    best = math.inf
    for i in range(1, model.period):
        d = contributions(model.alphabet, windows, windows[i][None, :]) @ weights
        best = min(best, float(d[:i].min()))
    return best
