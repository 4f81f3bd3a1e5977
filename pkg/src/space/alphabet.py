"""
Alphabets - Symbol domains M and their base metrics rho
"""
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np


class DomainError(ValueError):
    """Raised when a symbol, sequence or model leaves its declared domain"""


FINITE = "finite-discrete"
INTERVAL = "unit-interval"


@dataclass(frozen=True)
class AlphabetSpec:
    """Symbol domain with its metric: discrete metric on {0..m-1} or |a-b| on [0,1]"""

    kind: str
    size: int = 0

    def __post_init__(self):
        if self.kind not in (FINITE, INTERVAL):
            raise DomainError(f"Unknown alphabet kind: {self.kind}")
        if self.kind == FINITE and self.size < 1:
            raise DomainError(f"Finite alphabet needs size >= 1, got {self.size}")

    @classmethod
    def finite(cls, size: int) -> "AlphabetSpec":
        return cls(FINITE, int(size))

    @classmethod
    def interval(cls) -> "AlphabetSpec":
        return cls(INTERVAL, 0)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def perfect(self) -> bool:
        """Only the unit interval has no isolated points"""
        return self.kind == INTERVAL

    @property
    def dtype(self):
        return np.int32 if self.is_finite else np.float64

    @property
    def descriptor(self) -> Dict[str, Any]:
        if self.is_finite:
            return {"kind": "finite", "size": self.size, "perfect": False}
        return {"kind": "interval", "perfect": True}

    def check_symbols(self, values: Any) -> np.ndarray:
        """Validate symbols and return them as an array of the alphabet dtype"""
        arr = np.asarray(values)
        if self.is_finite:
            if arr.size and (not np.all(np.equal(np.mod(arr, 1), 0)) or arr.min() < 0 or arr.max() >= self.size):
                raise DomainError(f"Symbols outside {{0..{self.size - 1}}}: {values!r}")
            return arr.astype(np.int32)
        arr = arr.astype(np.float64)
        if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0):
            raise DomainError(f"Symbols outside [0,1]: {values!r}")
        return arr

    def metric(self, a: Any, b: Any) -> float:
        """rho(a, b)"""
        pair = self.check_symbols([a, b])
        return float(self.metric_array(pair[0], pair[1]))

    def metric_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise rho on (broadcastable) symbol arrays, no validation"""
        if self.is_finite:
            return np.not_equal(a, b).astype(np.float64)
        return np.abs(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64))

    def normalize(self, values: np.ndarray) -> np.ndarray:
        """Map symbols into [0,1] so test functions read both alphabets alike"""
        if self.is_finite:
            if self.size == 1:
                return np.zeros(np.shape(values))
            return np.asarray(values, dtype=np.float64) / (self.size - 1)
        return np.asarray(values, dtype=np.float64)

    def to_spec(self) -> Dict[str, Any]:
        if self.is_finite:
            return {"kind": "finite", "size": self.size}
        return {"kind": "interval"}

    @classmethod
    def from_spec(cls, spec: Dict[str, Any]) -> "AlphabetSpec":
        if not isinstance(spec, dict):
            raise DomainError(f"Alphabet spec must be an object, got {spec!r}")
        kind = spec.get("kind")
        if kind == "finite":
            return cls.finite(spec.get("size", 0))
        if kind == "interval":
            return cls.interval()
        raise DomainError(f"Unknown alphabet kind: {kind!r}")


def base_metric(alphabet: AlphabetSpec, a: Any, b: Any) -> float:
    """Evaluate rho(a, b) for the given alphabet"""
    return alphabet.metric(a, b)
