import itertools
import math
from typing import Any

import numpy as np

from src.core.exceptions import DomainError
from src.groups.base import Group


class IntegerLattice(Group):
    """Z^k with integer tuples as canonical forms"""

    kind = "integer-lattice"

    def __init__(self, rank: int = 1):
        if rank < 1:
            raise DomainError("Lattice rank must be positive", details={"rank": rank})
        self.rank = rank
        self._identity = (0,) * rank

    @property
    def identity(self) -> tuple[int, ...]:
        return self._identity

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(-x for x in a)

    def canonicalize(self, raw: Any) -> tuple[int, ...]:
        if isinstance(raw, int):
            raw = (raw,)
        values = tuple(int(x) for x in raw)
        if len(values) != self.rank:
            raise DomainError(
                "Element has the wrong number of coordinates",
                details={"rank": self.rank, "element": list(values)}
            )
        return values

    def generators(self) -> list[tuple[int, ...]]:
        return [tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank)]

    def random_element(self, rng: np.random.Generator, size: int = 4) -> tuple[int, ...]:
        return tuple(int(x) for x in rng.integers(-size, size + 1, self.rank))

    def euclidean_norm(self, a: tuple[int, ...]) -> float:
        return math.hypot(*a)

    def euclidean_ball_volume(self, r: float) -> int:
        """Number of lattice points with euclidean norm < r"""
        top = math.ceil(r)
        axis = range(-top, top + 1)
        return sum(1 for p in itertools.product(axis, repeat=self.rank) if math.hypot(*p) < r)

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, "rank": self.rank}

    def __repr__(self) -> str:
        return f"IntegerLattice(rank={self.rank})"
