from typing import Any

import numpy as np

from src.core.exceptions import DomainError
from src.groups.base import Group


def free_reduce(letters: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Cancel adjacent x x^-1 pairs with a stack; the result is the reduced word"""
    stack: list[int] = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


class FreeGroup(Group):
    """
    Free group on generators x_1..x_k

    Elements are reduced words: tuples of nonzero ints, i for x_i and -i for
    x_i^-1. The empty tuple is the identity.
    """

    kind = "free"

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise DomainError("Free group rank must be positive", details={"rank": rank})
        self.rank = rank

    @property
    def identity(self) -> tuple[int, ...]:
        return ()

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        # Only the seam between a and b can cancel; a and b are reduced already.
        i = 0
        while i < len(a) and i < len(b) and a[-1 - i] == -b[i]:
            i += 1
        return a[:len(a) - i] + b[i:]

    def inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(-x for x in reversed(a))

    def canonicalize(self, raw: Any) -> tuple[int, ...]:
        if isinstance(raw, str):
            raw = self.parse(raw)
        letters = [int(x) for x in raw]
        for letter in letters:
            if letter == 0 or abs(letter) > self.rank:
                raise DomainError(
                    "Letter outside the generating alphabet",
                    details={"letter": letter, "rank": self.rank}
                )
        return free_reduce(letters)

    def parse(self, word: str) -> list[int]:
        """Parse 'abA' style words: lowercase letter = generator, uppercase = inverse"""
        letters = []
        for char in word:
            index = ord(char.lower()) - ord("a") + 1
            letters.append(index if char.islower() else -index)
        return letters

    def format(self, a: tuple[int, ...]) -> str:
        if not a:
            return "e"
        return "".join(
            chr(ord("a") + abs(x) - 1) if x > 0 else chr(ord("A") + abs(x) - 1)
            for x in a
        )

    def generators(self) -> list[tuple[int, ...]]:
        return [(i,) for i in range(1, self.rank + 1)]

    def generator(self, index: int) -> tuple[int, ...]:
        """x_index; index may exceed the nominal rank only through graded schemes"""
        if index < 1:
            raise DomainError("Generator index must be positive", details={"index": index})
        return (index,)

    def random_element(self, rng: np.random.Generator, size: int = 4) -> tuple[int, ...]:
        letters = [
            int(rng.integers(1, self.rank + 1)) * (1 if rng.random() < 0.5 else -1)
            for _ in range(int(rng.integers(0, size + 1)))
        ]
        return free_reduce(letters)

    def sort_key(self, a: tuple[int, ...]) -> Any:
        return (len(a), a)

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, "rank": self.rank}

    def __repr__(self) -> str:
        return f"FreeGroup(rank={self.rank})"
