"""
Bilateral sequences - lazily generated points x = (..., x_-1, x_0, x_1, ...) of X
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from .alphabet import AlphabetSpec, DomainError
from .streams import BLOCK_SIZE, CounterStream

WRAP_MODES = ("reflect", "clamp")


def wrap_unit(values: np.ndarray, mode: str) -> np.ndarray:
    """Fold values from (-1, 2) back into [0,1]"""
    if mode == "clamp":
        return np.clip(values, 0.0, 1.0)
    if mode == "reflect":
        folded = np.where(values < 0.0, -values, values)
        return np.where(folded > 1.0, 2.0 - folded, folded)
    raise DomainError(f"Unknown wrap mode: {mode!r}")


def _block_indices(block_index: int) -> np.ndarray:
    start = block_index * BLOCK_SIZE
    return np.arange(start, start + BLOCK_SIZE, dtype=np.int64)


# =============================================================================
# COORDINATE SOURCES
# =============================================================================

@dataclass(frozen=True)
class IIDSource:
    """i.i.d. coordinates: uniform[0,1] or categorical via inverse CDF"""
    stream: CounterStream
    cumulative: Optional[Tuple[float, ...]] = None

    def block(self, block_index: int) -> np.ndarray:
        u = self.stream.uniforms(block_index)
        if self.cumulative is None:
            return u
        symbols = np.searchsorted(np.asarray(self.cumulative), u, side="right")
        return np.minimum(symbols, len(self.cumulative) - 1).astype(np.int32)


@dataclass(frozen=True)
class PeriodicSource:
    """coordinate(n) = block[(n - phase) mod k]"""
    symbols: Tuple[Any, ...]
    phase: int = 0

    def block(self, block_index: int) -> np.ndarray:
        arr = np.asarray(self.symbols)
        return arr[np.mod(_block_indices(block_index) - self.phase, len(self.symbols))]


@dataclass(frozen=True)
class NoisySource:
    """Periodic block plus i.i.d. uniform noise of total width eta, folded into [0,1]"""
    symbols: Tuple[float, ...]
    phase: int
    eta: float
    wrap: str
    stream: CounterStream

    def block(self, block_index: int) -> np.ndarray:
        base = np.asarray(self.symbols, dtype=np.float64)
        centers = base[np.mod(_block_indices(block_index) - self.phase, len(self.symbols))]
        noise = (self.stream.uniforms(block_index) - 0.5) * self.eta
        return wrap_unit(centers + noise, self.wrap)


@dataclass(frozen=True)
class ConstantSource:
    symbol: Any

    def block(self, block_index: int) -> np.ndarray:
        return np.full(BLOCK_SIZE, self.symbol)


@dataclass(frozen=True)
class OverrideSource:
    """Another source with finitely many coordinates replaced"""
    base: Any
    overrides: Tuple[Tuple[int, Any], ...]

    def block(self, block_index: int) -> np.ndarray:
        values = np.array(self.base.block(block_index), copy=True)
        start = block_index * BLOCK_SIZE
        for index, symbol in self.overrides:
            if start <= index < start + BLOCK_SIZE:
                values[index - start] = symbol
        return values


# =============================================================================
# SEQUENCES
# =============================================================================

class BilateralSequence:
    """A point of X = prod_Z M, realized on demand and cached block by block"""

    def __init__(
        self,
        alphabet: AlphabetSpec,
        source: Any,
        offset: int = 0,
        period: Optional[int] = None,
        cache: Optional[Dict[int, np.ndarray]] = None,
    ):
        self.alphabet = alphabet
        self.source = source
        self.offset = int(offset)
        self.period = period
        # Shifted views share the cache of the sequence they came from
        self._cache = cache if cache is not None else {}

    # -------------------------------------------------------------------------
    # constructors
    # -------------------------------------------------------------------------

    @classmethod
    def from_block(cls, alphabet: AlphabetSpec, block: Any, phase: int = 0) -> "BilateralSequence":
        symbols = alphabet.check_symbols(block)
        if symbols.size == 0:
            raise DomainError("Periodic block must hold at least one symbol")
        return cls(alphabet, PeriodicSource(tuple(symbols.tolist()), int(phase)), period=int(symbols.size))

    @classmethod
    def constant(cls, alphabet: AlphabetSpec, symbol: Any) -> "BilateralSequence":
        value = alphabet.check_symbols([symbol])[0]
        return cls(alphabet, ConstantSource(value.item()), period=1)

    @classmethod
    def iid(cls, alphabet: AlphabetSpec, seed: int, weights: Optional[Any] = None) -> "BilateralSequence":
        cumulative = None
        if weights is not None:
            cumulative = tuple(np.cumsum(np.asarray(weights, dtype=np.float64)).tolist())
        return cls(alphabet, IIDSource(CounterStream(seed), cumulative))

    def with_coordinates(self, mapping: Mapping[int, Any]) -> "BilateralSequence":
        """Copy of this sequence with the given coordinates replaced"""
        symbols = self.alphabet.check_symbols(list(mapping.values()))
        overrides = tuple((int(n) - self.offset, s) for n, s in zip(mapping.keys(), symbols.tolist()))
        return BilateralSequence(self.alphabet, OverrideSource(self.source, overrides), self.offset, None)

    def shifted(self, k: int) -> "BilateralSequence":
        """T^k x: coordinate(i) of the result equals coordinate(i - k) of self"""
        return BilateralSequence(self.alphabet, self.source, self.offset + int(k), self.period, self._cache)

    # -------------------------------------------------------------------------
    # coordinate access
    # -------------------------------------------------------------------------

    def _block(self, block_index: int) -> np.ndarray:
        values = self._cache.get(block_index)
        if values is None:
            values = np.asarray(self.source.block(block_index)).astype(self.alphabet.dtype)
            self._cache[block_index] = values
        return values

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coordinates x_lo .. x_hi (inclusive)"""
        if hi < lo:
            return np.empty(0, dtype=self.alphabet.dtype)
        base_lo, base_hi = lo - self.offset, hi - self.offset
        first, last = math.floor(base_lo / BLOCK_SIZE), math.floor(base_hi / BLOCK_SIZE)
        if first == last:
            chunk = self._block(first)
        else:
            chunk = np.concatenate([self._block(b) for b in range(first, last + 1)])
        start = base_lo - first * BLOCK_SIZE
        return chunk[start:start + (hi - lo + 1)]

    def release_between(self, lo: int, hi: int) -> None:
        """Drop cached blocks whose coordinates all lie in lo .. hi; they are regenerated on demand"""
        stale = [b for b in self._cache
                 if lo <= b * BLOCK_SIZE + self.offset and (b + 1) * BLOCK_SIZE - 1 + self.offset <= hi]
        for block_index in stale:
            del self._cache[block_index]

    @property
    def cached_blocks(self) -> int:
        return len(self._cache)

    def coordinate(self, n: int) -> Any:
        return self.window(n, n)[0].item()

    def __repr__(self) -> str:
        return f"BilateralSequence({self.alphabet.kind}, {type(self.source).__name__}, offset={self.offset})"
