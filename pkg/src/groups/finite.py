import itertools
from typing import Any

import numpy as np

from src.core.exceptions import DomainError, GroupAxiomError
from src.groups.base import Group


class TableGroup(Group):
    """Finite group given by its Cayley table on elements 0..n-1"""

    kind = "finite"

    def __init__(self, table: list[list[int]], name: str = "table"):
        size = len(table)
        if size == 0 or any(len(row) != size for row in table):
            raise DomainError("Cayley table must be a non-empty square", details={"rows": size})
        if any(not 0 <= v < size for row in table for v in row):
            raise DomainError("Cayley table entries must index elements")

        self.name = name
        self.table = tuple(tuple(row) for row in table)
        self.order = size

        identities = [
            e for e in range(size)
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(size))
        ]
        if len(identities) != 1:
            raise GroupAxiomError("Cayley table has no two-sided identity", details={"name": name})
        self._identity = identities[0]

        self._inverse: dict[int, int] = {}
        for x in range(size):
            partner = next((y for y in range(size) if self.table[x][y] == self._identity), None)
            if partner is None or self.table[partner][x] != self._identity:
                raise GroupAxiomError("Element has no two-sided inverse", details={"element": x})
            self._inverse[x] = partner

        for x, y, z in itertools.product(range(size), repeat=3):
            if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                raise GroupAxiomError("Cayley table is not associative", details={"triple": [x, y, z]})

    @classmethod
    def cyclic(cls, order: int) -> "TableGroup":
        return cls([[(i + j) % order for j in range(order)] for i in range(order)], name=f"C{order}")

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def canonicalize(self, raw: Any) -> int:
        value = int(raw[0] if isinstance(raw, (list, tuple)) else raw)
        if not 0 <= value < self.order:
            raise DomainError("Element outside the table", details={"element": value})
        return value

    def generators(self) -> list[int]:
        return [x for x in range(self.order) if x != self._identity]

    def random_element(self, rng: np.random.Generator, size: int = 4) -> int:
        return int(rng.integers(0, self.order))

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, "name": self.name, "order": self.order}

    def __repr__(self) -> str:
        return f"TableGroup(name={self.name!r}, order={self.order})"
