from typing import Any

import numpy as np

from src.config.settings import get_settings
from src.core.exceptions import DomainError, NonFinite, SingularMatrix
from src.groups.base import Group


class SquareMatrix:
    """
    Immutable invertible real n x n matrix with a cached inverse

    Equality and hashing compare entries rounded to a grid of width
    10·FLOAT_TOLERANCE, so matrices equal in GL(n, R) are also equal as
    dictionary keys.

    Construction rejects non-finite entries, singular matrices and matrices whose
    condition estimate ||A||·||A^-1|| exceeds the configured limit. The inverse of
    an inverse is the original object, so formulas symmetric in A and A^-1 give
    bit-identical results for both.
    """

    __slots__ = ("_entries", "_inverse", "_key")

    def __init__(
        self,
        entries: Any,
        inverse: "SquareMatrix | None" = None,
        condition_limit: float | None = None
    ):
        array = np.array(entries, dtype=float)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DomainError("Matrix must be square", details={"shape": list(array.shape)})
        if not np.all(np.isfinite(array)):
            raise NonFinite("Matrix has non-finite entries")
        array.setflags(write=False)
        self._entries = array
        quantum = get_settings().FLOAT_TOLERANCE * 10
        # + 0.0 folds -0.0 into 0.0
        self._key = (array.shape[0], (np.round(array / quantum) + 0.0).tobytes())

        if inverse is not None:
            self._inverse = inverse
            return

        limit = condition_limit if condition_limit is not None else get_settings().CONDITION_LIMIT
        try:
            raw_inverse = np.linalg.inv(array)
        except np.linalg.LinAlgError as e:
            raise SingularMatrix("Matrix is singular", details={"entries": array.tolist()}) from e
        condition = float(np.linalg.norm(array, 2) * np.linalg.norm(raw_inverse, 2))
        if not np.isfinite(condition) or condition > limit:
            raise SingularMatrix(
                "Matrix condition estimate exceeds the limit",
                details={"condition": condition, "limit": limit}
            )
        self._inverse = SquareMatrix(raw_inverse, inverse=self)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dimension(self) -> int:
        return self._entries.shape[0]

    @property
    def inverse(self) -> "SquareMatrix":
        return self._inverse

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix(self._entries @ other._entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SquareMatrix) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def tolist(self) -> list[list[float]]:
        return self._entries.tolist()

    def __repr__(self) -> str:
        return f"SquareMatrix({self.tolist()})"


class GeneralLinearGroup(Group):
    """GL(n, R) in double precision; equality is SquareMatrix equality on the tolerance grid"""

    kind = "matrix"

    def __init__(self, dimension: int = 2):
        if dimension < 1:
            raise DomainError("Matrix dimension must be positive", details={"dimension": dimension})
        self.dimension = dimension
        self._identity = SquareMatrix(np.eye(dimension))

    @property
    def identity(self) -> SquareMatrix:
        return self._identity

    def mul(self, a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
        return a @ b

    def inv(self, a: SquareMatrix) -> SquareMatrix:
        return a.inverse

    def canonicalize(self, raw: Any) -> SquareMatrix:
        matrix = raw if isinstance(raw, SquareMatrix) else SquareMatrix(raw)
        if matrix.dimension != self.dimension:
            raise DomainError(
                "Matrix has the wrong dimension",
                details={"expected": self.dimension, "got": matrix.dimension}
            )
        return matrix

    def generators(self) -> list[SquareMatrix]:
        """Elementary unipotents; they generate SL(n, R)-words used by the samplers"""
        gens = []
        for i in range(self.dimension):
            for j in range(self.dimension):
                if i != j:
                    entries = np.eye(self.dimension)
                    entries[i, j] = 1.0
                    gens.append(SquareMatrix(entries))
        return gens

    def random_element(self, rng: np.random.Generator, size: int = 4) -> SquareMatrix:
        """Identity plus a Gaussian perturbation, resampled until well conditioned"""
        scale = 0.5 + 0.1 * size
        while True:
            entries = np.eye(self.dimension) + scale * rng.standard_normal((self.dimension, self.dimension))
            try:
                return SquareMatrix(entries, condition_limit=1e3)
            except SingularMatrix:
                continue

    def sort_key(self, a: SquareMatrix) -> Any:
        return tuple(a.entries.ravel())

    def to_json(self, a: SquareMatrix) -> Any:
        return a.tolist()

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, "dimension": self.dimension}

    def __repr__(self) -> str:
        return f"GeneralLinearGroup(dimension={self.dimension})"
