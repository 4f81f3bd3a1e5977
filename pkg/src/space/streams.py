"""
Counter-mode random streams - reproducible draws keyed by (seed, tag, index)
"""
import zlib
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .alphabet import DomainError

Tag = Union[int, str]

BLOCK_SIZE = 4096
SEED_LIMIT = 2 ** 64


def tag_id(tag: Tag) -> int:
    """Stable non-negative integer for a stream tag"""
    if isinstance(tag, str):
        return zlib.crc32(tag.encode("utf-8"))
    if isinstance(tag, (int, np.integer)):
        return _zigzag(int(tag))
    raise DomainError(f"Stream tags must be int or str, got {tag!r}")


def _zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise DomainError(f"Seed must lie in [0, 2^64), got {seed}")
    return seed


def seed_sequence(seed: int, *path: Tag) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=_check_seed(seed), spawn_key=tuple(tag_id(p) for p in path))


def derive_seed(seed: int, *path: Tag) -> int:
    """Child seed for a named substream; disjoint paths give independent seeds"""
    return int(seed_sequence(seed, *path).generate_state(1, np.uint64)[0])


def substream(seed: int, *path: Tag) -> np.random.Generator:
    """Philox generator for the substream (seed, *path)"""
    return np.random.Generator(np.random.Philox(seed_sequence(seed, *path)))


@dataclass(frozen=True)
class CounterStream:
    """Uniform draws addressed by block index: block b is a pure function of (seed, tag, b)"""

    seed: int
    tag: Tag = "coordinates"
    _key: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        words = seed_sequence(self.seed, self.tag).generate_state(2, np.uint64)
        object.__setattr__(self, "_key", (int(words[0]) << 64) | int(words[1]))

    def uniforms(self, block_index: int, size: int = BLOCK_SIZE) -> np.ndarray:
        # Block counters live in the second counter word, so blocks never overlap
        bit_generator = np.random.Philox(key=self._key, counter=_zigzag(int(block_index)) << 64)
        return np.random.Generator(bit_generator).random(size)
