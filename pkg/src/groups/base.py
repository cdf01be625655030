import itertools
from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterable, Sequence
from typing import Any, TypeAlias

import numpy as np

from src.core.exceptions import EmptySample, GroupAxiomError
from src.core.model import AxiomCheck, ValidationReport

# Canonical encoding of a group element. Always hashable; two encodings are
# equal exactly when the elements are equal.
GroupElement: TypeAlias = Hashable


class Group(ABC):
    """A concrete countable (or matrix) group with canonical element forms"""

    kind: str = "abstract"

    @property
    @abstractmethod
    def identity(self) -> GroupElement:
        ...

    @abstractmethod
    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        ...

    @abstractmethod
    def inv(self, a: GroupElement) -> GroupElement:
        ...

    @abstractmethod
    def canonicalize(self, raw: Any) -> GroupElement:
        """Turn a loose encoding (list, int, nested list) into the canonical form"""
        ...

    @abstractmethod
    def generators(self) -> list[GroupElement]:
        """Standard finite generating set, without inverses"""
        ...

    @abstractmethod
    def random_element(self, rng: np.random.Generator, size: int = 4) -> GroupElement:
        ...

    def equals(self, a: GroupElement, b: GroupElement) -> bool:
        return a == b

    def is_identity(self, a: GroupElement) -> bool:
        return self.equals(a, self.identity)

    def product(self, elements: Iterable[GroupElement]) -> GroupElement:
        result = self.identity
        for element in elements:
            result = self.mul(result, element)
        return result

    def sort_key(self, a: GroupElement) -> Any:
        """Deterministic ordering key used for tie-breaking and output order"""
        return a

    def to_json(self, a: GroupElement) -> Any:
        return list(a) if isinstance(a, tuple) else a

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}()"


def close_under_inverse(group: Group, sample: Iterable[GroupElement]) -> list[GroupElement]:
    """Sample plus inverses, de-duplicated, in first-seen order"""
    seen: dict[GroupElement, None] = {}
    for element in sample:
        seen.setdefault(element, None)
        seen.setdefault(group.inv(element), None)
    return list(seen)


def validate_group_axioms(
    group: Group,
    sample: Sequence[GroupElement],
    strict: bool = False
) -> ValidationReport:
    """
    Check associativity, the inverse-of-product law and a·a⁻¹ = e on a sample

    Args:
        group: Group under test
        sample: Elements; all triples are checked
        strict: Raise GroupAxiomError instead of returning a failing report

    Returns:
        ValidationReport with one check per law
    """
    if not sample:
        raise EmptySample("Cannot validate group axioms on an empty sample")

    checks: list[AxiomCheck] = []

    bad_assoc = None
    for a, b, c in itertools.product(sample, repeat=3):
        if not group.equals(group.mul(group.mul(a, b), c), group.mul(a, group.mul(b, c))):
            bad_assoc = (a, b, c)
            break
    checks.append(AxiomCheck(
        name="associativity", passed=bad_assoc is None,
        witness=None if bad_assoc is None else repr(bad_assoc)
    ))

    bad_inv = None
    for a, b in itertools.product(sample, repeat=2):
        if not group.equals(group.inv(group.mul(a, b)), group.mul(group.inv(b), group.inv(a))):
            bad_inv = (a, b)
            break
    checks.append(AxiomCheck(
        name="inverse_of_product", passed=bad_inv is None,
        witness=None if bad_inv is None else repr(bad_inv)
    ))

    bad_cancel = next((a for a in sample if not group.is_identity(group.mul(a, group.inv(a)))), None)
    checks.append(AxiomCheck(
        name="inverse_cancels", passed=bad_cancel is None,
        witness=None if bad_cancel is None else repr(bad_cancel)
    ))

    report = ValidationReport(subject=f"group:{group.kind}", sample_size=len(sample), checks=checks)
    if strict and not report.passed:
        raise GroupAxiomError("Group axioms fail on sample", details={"failed": report.failed_names()})
    return report
