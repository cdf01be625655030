import itertools
import numbers
from collections.abc import Callable, Iterator, Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.config.settings import get_settings
from src.core.exceptions import EmptySample
from src.core.logger import LoggerFactory
from src.core.model import AxiomCheck, ValidationReport
from src.groups.base import Group, GroupElement, close_under_inverse

logger = LoggerFactory.create_logger("GroupCore", level=get_settings().LOG_LEVEL)


class LengthFunction(BaseModel):
    """l: G -> [0, inf) together with the group it lives on"""
    group: Group
    evaluator: Callable[[Any], Any]
    name: str
    source: str = "explicit"

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def __call__(self, g: GroupElement) -> Any:
        return self.evaluator(g)


class MetricView(BaseModel):
    """d: X x X -> [0, inf); `group` is set when X is a group"""
    evaluator: Callable[[Any, Any], Any]
    name: str
    group: Group | None = None
    source: str = "explicit"

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def __call__(self, x: Any, y: Any) -> Any:
        return self.evaluator(x, y)


def metric_from_length(l: LengthFunction) -> MetricView:
    """d(x, y) = l(y^-1 x); left invariant by construction"""
    group = l.group
    return MetricView(
        evaluator=lambda x, y: l(group.mul(group.inv(y), x)),
        name=f"metric[{l.name}]",
        group=group,
        source=f"metric_from_length({l.source})"
    )


def length_from_metric(d: MetricView) -> LengthFunction:
    """l(x) = d(x, e); needs a left invariant metric on a group"""
    if d.group is None:
        raise EmptySample("length_from_metric needs a metric on a group", details={"metric": d.name})
    group = d.group
    return LengthFunction(
        group=group,
        evaluator=lambda x: d(x, group.identity),
        name=f"length[{d.name}]",
        source=f"length_from_metric({d.source})"
    )


def _is_exact(*values: Any) -> bool:
    return all(isinstance(v, numbers.Rational) for v in values)


def _tolerance(tolerance: float, *values: Any) -> float:
    return 0.0 if _is_exact(*values) else tolerance


def _limited(
    items: Iterator[tuple], total: int, limit: int | None, rng: np.random.Generator
) -> Iterator[tuple]:
    """Yield all items, or a seeded subsample of about `limit` of them"""
    if limit is None or total <= limit:
        yield from items
        return
    keep = limit / total
    for item in items:
        if rng.random() < keep:
            yield item


def validate_length_axioms(
    l: LengthFunction,
    sample: Sequence[GroupElement],
    tolerance: float | None = None,
    max_pairs: int | None = None,
    seed: int = 0
) -> ValidationReport:
    """
    Check l(e) = 0 < l(g), l(g) = l(g^-1) and l(gh) <= l(g) + l(h) on a sample

    Args:
        l: Length function under test
        sample: Elements; inverses are added before checking
        tolerance: Float tolerance; integer/rational values compare exactly
        max_pairs: Subsample subadditivity pairs above this count
        seed: Seed for that subsample

    Returns:
        ValidationReport with checks "definiteness", "symmetry", "subadditivity"
    """
    if not sample:
        raise EmptySample("Cannot validate length axioms on an empty sample", details={"length": l.name})
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    group = l.group
    elements = close_under_inverse(group, sample)
    values = {g: l(g) for g in elements}

    # l(e) = 0 and l(g) > 0 off the identity
    e_value = l(group.identity)
    worst, witness = abs(float(e_value)), None if e_value == 0 else repr(group.identity)
    definite = abs(e_value) <= _tolerance(tol, e_value)
    for g, value in values.items():
        if group.is_identity(g):
            continue
        if not value > 0:
            definite = False
            if witness is None or -float(value) >= worst:
                worst, witness = -float(value), repr(g)
    checks = [AxiomCheck(
        name="definiteness", passed=definite, worst_violation=max(worst, 0.0),
        witness=None if definite else witness, tolerance=None if _is_exact(e_value) else tol
    )]

    # l(g) = l(g^-1)
    worst, witness, passed = 0.0, None, True
    for g in elements:
        a, b = values[g], values[group.inv(g)]
        gap = abs(float(a - b)) if a != b else 0.0
        if gap > _tolerance(tol, a, b):
            passed = False
        if gap > worst:
            worst, witness = gap, repr(g)
    checks.append(AxiomCheck(
        name="symmetry", passed=passed, worst_violation=worst,
        witness=None if passed else witness, tolerance=tol
    ))

    # l(gh) <= l(g) + l(h)
    rng = np.random.default_rng(seed)
    worst, witness, passed = 0.0, None, True
    pairs = _limited(itertools.product(elements, repeat=2), len(elements) ** 2, max_pairs, rng)
    for g, h in pairs:
        lhs = l(group.mul(g, h))
        rhs = values[g] + values[h]
        if lhs <= rhs:
            continue
        excess = float(lhs - rhs)
        if excess > _tolerance(tol, lhs, rhs):
            passed = False
        if excess > worst:
            worst, witness = excess, repr((g, h))
    checks.append(AxiomCheck(
        name="subadditivity", passed=passed, worst_violation=worst,
        witness=None if passed else witness, tolerance=tol
    ))

    report = ValidationReport(subject=l.name, sample_size=len(elements), checks=checks)
    logger.debug(f"Length axioms for {l.name}: {'pass' if report.passed else report.failed_names()}")
    return report


def validate_metric_axioms(
    d: MetricView,
    sample: Sequence[Any],
    tolerance: float | None = None,
    translations: Sequence[GroupElement] | None = None,
    max_triples: int | None = None,
    seed: int = 0
) -> ValidationReport:
    """
    Check the metric axioms, and left invariance when d lives on a group

    Args:
        d: Metric under test
        sample: Points
        tolerance: Float tolerance; integer/rational values compare exactly
        translations: Elements g for d(gx, gy) = d(x, y); defaults to the sample
        max_triples: Subsample triangle/invariance triples above this count
        seed: Seed for that subsample

    Returns:
        ValidationReport with checks "indiscernibles", "symmetry", "triangle"
        and, on groups, "left_invariance"
    """
    if not sample:
        raise EmptySample("Cannot validate metric axioms on an empty sample", details={"metric": d.name})
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    points = list(sample)
    same = d.group.equals if d.group is not None else (lambda x, y: x == y)
    dist = {(x, y): d(x, y) for x in points for y in points}

    # d(x, x) = 0, d(x, y) > 0 for x != y, never negative
    worst, witness, passed = 0.0, None, True
    for (x, y), value in dist.items():
        if same(x, y):
            bad = abs(value) > _tolerance(tol, value)
            gap = abs(float(value))
        else:
            bad = not value > 0
            gap = -float(value) if value <= 0 else 0.0
        if bad:
            passed = False
            if witness is None or gap >= worst:
                worst, witness = gap, repr((x, y))
    checks = [AxiomCheck(
        name="indiscernibles", passed=passed, worst_violation=worst,
        witness=witness, tolerance=tol
    )]

    worst, witness, passed = 0.0, None, True
    for x, y in itertools.combinations(points, 2):
        a, b = dist[(x, y)], dist[(y, x)]
        gap = abs(float(a - b)) if a != b else 0.0
        if gap > _tolerance(tol, a, b):
            passed = False
        if gap > worst:
            worst, witness = gap, repr((x, y))
    checks.append(AxiomCheck(
        name="symmetry", passed=passed, worst_violation=worst,
        witness=None if passed else witness, tolerance=tol
    ))

    rng = np.random.default_rng(seed)
    worst, witness, passed = 0.0, None, True
    triples = _limited(itertools.product(points, repeat=3), len(points) ** 3, max_triples, rng)
    for x, y, z in triples:
        lhs, rhs = dist[(x, z)], dist[(x, y)] + dist[(y, z)]
        if lhs <= rhs:
            continue
        excess = float(lhs - rhs)
        if excess > _tolerance(tol, lhs, rhs):
            passed = False
        if excess > worst:
            worst, witness = excess, repr((x, y, z))
    checks.append(AxiomCheck(
        name="triangle", passed=passed, worst_violation=worst,
        witness=None if passed else witness, tolerance=tol
    ))

    if d.group is not None:
        group = d.group
        shifts = list(translations) if translations is not None else points
        worst, witness, passed = 0.0, None, True
        total = len(shifts) * len(points) ** 2
        combos = _limited(itertools.product(shifts, points, points), total, max_triples, rng)
        for g, x, y in combos:
            moved = d(group.mul(g, x), group.mul(g, y))
            base = dist[(x, y)]
            gap = abs(float(moved - base)) if moved != base else 0.0
            if gap > _tolerance(tol, moved, base):
                passed = False
            if gap > worst:
                worst, witness = gap, repr((g, x, y))
        checks.append(AxiomCheck(
            name="left_invariance", passed=passed, worst_violation=worst,
            witness=None if passed else witness, tolerance=tol
        ))

    report = ValidationReport(subject=d.name, sample_size=len(points), checks=checks)
    logger.debug(f"Metric axioms for {d.name}: {'pass' if report.passed else report.failed_names()}")
    return report
