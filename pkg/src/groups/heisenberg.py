from typing import Any

import numpy as np

from src.core.exceptions import DomainError
from src.groups.base import Group


class HeisenbergGroup(Group):
    """
    Integer Heisenberg group

    (a, b, c) encodes the matrix [[1, a, c], [0, 1, b], [0, 0, 1]], so
    (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
    """

    kind = "heisenberg"

    @property
    def identity(self) -> tuple[int, int, int]:
        return (0, 0, 0)

    def mul(self, x: tuple[int, int, int], y: tuple[int, int, int]) -> tuple[int, int, int]:
        a, b, c = x
        a2, b2, c2 = y
        return (a + a2, b + b2, c + c2 + a * b2)

    def inv(self, x: tuple[int, int, int]) -> tuple[int, int, int]:
        a, b, c = x
        return (-a, -b, a * b - c)

    def canonicalize(self, raw: Any) -> tuple[int, int, int]:
        values = tuple(int(v) for v in raw)
        if len(values) != 3:
            raise DomainError("Heisenberg elements are integer triples", details={"element": list(values)})
        return values  # type: ignore[return-value]

    def generators(self) -> list[tuple[int, int, int]]:
        return [(1, 0, 0), (0, 1, 0)]

    def random_element(self, rng: np.random.Generator, size: int = 4) -> tuple[int, int, int]:
        word = rng.integers(0, 4, int(rng.integers(0, size + 1)))
        steps = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]
        return self.product(steps[int(i)] for i in word)

    def to_matrix(self, x: tuple[int, int, int]) -> np.ndarray:
        a, b, c = x
        return np.array([[1.0, a, c], [0.0, 1.0, b], [0.0, 0.0, 1.0]])

    def sort_key(self, x: tuple[int, int, int]) -> Any:
        return (sum(abs(v) for v in x), x)

    def __repr__(self) -> str:
        return "HeisenbergGroup()"
