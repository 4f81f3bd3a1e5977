"""
Scale grids - geometric ladders eps_j = eps0 * q^j shared by dimension and recurrence estimators
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, List

from ..space.alphabet import DomainError

MIN_SCALES = 8


@dataclass(frozen=True)
class ScaleGrid:
    """eps_j = eps0 * q^j for j < J; only j >= s_index enters the sup/inf"""

    eps0: float = 2.0 ** -2
    q: float = 0.5
    J: int = 12
    s_index: int = 1

    def __post_init__(self):
        if not 0 < self.eps0 < 1:
            raise DomainError(f"eps0 must lie in (0,1), got {self.eps0}")
        if not 0 < self.q < 1:
            raise DomainError(f"q must lie in (0,1), got {self.q}")
        if self.J < MIN_SCALES:
            raise DomainError(f"J must be at least {MIN_SCALES}, got {self.J}")
        if not 0 <= self.s_index < self.J:
            raise DomainError(f"s_index must lie in [0, J), got {self.s_index}")

    @property
    def scales(self) -> List[float]:
        return [self.eps0 * self.q ** j for j in range(self.J)]

    @property
    def admissible(self) -> List[int]:
        """Indices entering the sup/inf; index 0 is the reference scale"""
        return list(range(max(1, self.s_index), self.J))

    @property
    def finest(self) -> float:
        return self.eps0 * self.q ** (self.J - 1)

    def index_of(self, eps: float) -> int:
        """Index of the grid scale closest to eps on a log scale"""
        return min(range(self.J), key=lambda j: abs(math.log(self.scales[j]) - math.log(eps)))

    def scaled(self, factor: float) -> "ScaleGrid":
        """Same ladder with every radius multiplied by factor"""
        return ScaleGrid(self.eps0 * factor, self.q, self.J, self.s_index)

    def with_s_index(self, s_index: int) -> "ScaleGrid":
        return ScaleGrid(self.eps0, self.q, self.J, s_index)

    def to_spec(self) -> Dict[str, Any]:
        return {"eps0": self.eps0, "q": self.q, "J": self.J, "s_index": self.s_index}

    @classmethod
    def from_spec(cls, spec: Dict[str, Any]) -> "ScaleGrid":
        unknown = set(spec) - {"eps0", "q", "J", "s_index"}
        if unknown:
            raise DomainError(f"Unknown grid keys: {sorted(unknown)}")
        return cls(float(spec.get("eps0", cls.eps0)), float(spec.get("q", cls.q)),
                   int(spec.get("J", cls.J)), int(spec.get("s_index", cls.s_index)))

    @classmethod
    def from_string(cls, text: str) -> "ScaleGrid":
        """Parse "eps0,q,J,s" as given on the command line"""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise DomainError(f"Grid must be eps0,q,J,s, got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise DomainError(f"Malformed grid {text!r}: {exc}") from exc
