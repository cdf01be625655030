import math
from collections.abc import Callable, Iterable, Sequence
from typing import Any

from pydantic import BaseModel, ConfigDict

from src.config.settings import get_settings
from src.core.exceptions import DomainError, UncoverableSet
from src.core.logger import LoggerFactory
from src.core.model import (
    AxiomCheck,
    BoundReport,
    BoundRow,
    CoverEntry,
    CoveringReport,
    ValidationReport,
)
from src.groups.base import Group, GroupElement
from src.metrics.search import SearchResult, uniform_cost_search
from src.metrics.word import Weight, WeightedGeneratingSet, word_length

logger = LoggerFactory.create_logger("TwoLevel", level=get_settings().LOG_LEVEL)


class TwoLevelSpec(BaseModel):
    """
    Subgroup G_0 with its weighted generators plus coset representatives x_1, x_2, ...

    Representatives multiply on the right only; weights default to l_1(x_i) = i.
    `rep_weights[i-1]` overrides the weight of x_i (starred weights).
    """
    base: WeightedGeneratingSet
    representative: Callable[[int], Any]
    count: int | None = None
    rep_weights: tuple[Any, ...] | None = None
    in_subgroup: Callable[[Any], bool] | None = None
    covering: CoveringReport | None = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def group(self) -> Group:
        return self.base.group

    def rep(self, index: int) -> GroupElement:
        x = self.group.canonicalize(self.representative(index))
        if self.in_subgroup is not None and self.in_subgroup(x):
            raise DomainError("Coset representative lies in G_0", details={"index": index, "element": repr(x)})
        return x

    def rep_weight(self, index: int) -> Weight:
        if self.rep_weights is not None and index <= len(self.rep_weights):
            return self.rep_weights[index - 1]
        return index

    def representatives_up_to(self, cost_cap: Weight) -> list[tuple[int, GroupElement, Weight]]:
        """(i, x_i, weight) with weight <= cost_cap; weights are >= i so i <= cost_cap"""
        top = math.floor(cost_cap)
        if self.count is not None:
            top = min(top, self.count)
        entries = []
        for i in range(1, top + 1):
            weight = self.rep_weight(i)
            if weight < 1:
                raise DomainError("Representative weights must be >= 1", details={"index": i})
            if weight <= cost_cap:
                entries.append((i, self.rep(i), weight))
        return entries


def _two_level_search(
    spec: TwoLevelSpec,
    cost_cap: Weight,
    target: GroupElement | None = None,
    budget: int | None = None
) -> SearchResult:
    if not cost_cap > 0:
        raise DomainError("cost_cap must be positive", details={"cost_cap": repr(cost_cap)})
    limit = budget if budget is not None else get_settings().COARSE_METRIC_BUDGET
    group = spec.group
    base_entries = spec.base.entries_up_to(cost_cap, budget=limit)
    edges = sorted(
        [(w, s) for s, w in base_entries] + [(w, x) for _, x, w in spec.representatives_up_to(cost_cap)],
        key=lambda item: item[0]
    )

    def expand(node, remaining):
        for label, (w, s) in enumerate(edges):
            if w > remaining:
                break
            yield group.mul(node, s), w, label

    return uniform_cost_search(group.identity, expand, cost_cap, target=target, budget=limit)


def tilde_length(spec: TwoLevelSpec, g: GroupElement, cost_cap: Weight, budget: int | None = None) -> Weight:
    """Infimum of l_0(h_0) + sum(l_1(s_i) + l_0(h_i)) over g = h_0 s_1 h_1 ... s_k h_k"""
    g = spec.group.canonicalize(g)
    if spec.group.is_identity(g):
        return 0
    result = _two_level_search(spec, cost_cap, target=g, budget=budget)
    return result.distances.get(g, math.inf)


def two_level_length(spec: TwoLevelSpec, g: GroupElement, cost_cap: Weight, budget: int | None = None) -> Weight:
    """l(g) = max(l~(g), l~(g^-1)); math.inf when either exceeds cost_cap"""
    g = spec.group.canonicalize(g)
    return max(
        tilde_length(spec, g, cost_cap, budget=budget),
        tilde_length(spec, spec.group.inv(g), cost_cap, budget=budget)
    )


def two_level_ball(spec: TwoLevelSpec, n: Weight, budget: int | None = None) -> frozenset:
    """Open ball {g : l(g) < n} of the two-level metric"""
    if n <= 0:
        return frozenset()
    distances = _two_level_search(spec, n, budget=budget).distances
    group = spec.group
    return frozenset(
        g for g, value in distances.items()
        if value < n and distances.get(group.inv(g), math.inf) < n
    )


# ============================================================================
# Greedy covers and starred weights
# ============================================================================

def greedy_cover(group: Group, points: Iterable[GroupElement], U: Sequence[GroupElement]) -> list[GroupElement]:
    """
    Centers y_1..y_p with points ⊆ ∪ y_j·U, chosen greedily

    Candidates are y = p·u^-1 (the only translates that meet the points); each
    round takes the candidate covering the most uncovered points, earliest first.
    """
    targets = list(dict.fromkeys(points))
    uncovered = set(targets)
    candidates = list(dict.fromkeys(group.mul(p, group.inv(u)) for p in targets for u in U))
    reach = {y: {group.mul(y, u) for u in U} & uncovered for y in candidates}

    centers: list[GroupElement] = []
    while uncovered:
        best, gain = None, 0
        for y in candidates:
            covered = len(reach[y] & uncovered)
            if covered > gain:
                best, gain = y, covered
        if best is None:
            raise UncoverableSet("Greedy cover made no progress", details={"left": len(uncovered)})
        centers.append(best)
        uncovered -= reach[best]

    for p in targets:
        if not any(group.equals(group.mul(y, u), p) for y in centers for u in U):
            raise UncoverableSet("Cover check failed", details={"point": repr(p)})
    return centers


def _check_unit_set(group: Group, U: Sequence[GroupElement]) -> list[GroupElement]:
    unit = [group.canonicalize(u) for u in U]
    members = set(unit)
    if group.identity not in members:
        raise DomainError("U must contain the identity")
    if any(group.inv(u) not in members for u in unit):
        raise DomainError("U must be symmetric")
    return list(dict.fromkeys(unit))


def starred_weights(spec: TwoLevelSpec, U: Sequence[GroupElement], count: int | None = None) -> TwoLevelSpec:
    """
    Replace l_1 by l_1*(x_i) = i + log2(p(i)), p(i) the greedy cover size of U·x_i

    Args:
        spec: Two-level data with default or explicit weights
        U: Finite symmetric unit set containing e
        count: Number of representatives to weigh; defaults to spec.count

    Returns:
        New spec with starred weights and the CoveringReport (including q for U²)
    """
    top = count if count is not None else spec.count
    if top is None:
        raise DomainError("starred_weights needs a finite number of representatives")
    group = spec.group
    unit = _check_unit_set(group, U)

    entries, weights = [], []
    for i in range(1, top + 1):
        x = spec.rep(i)
        centers = greedy_cover(group, (group.mul(u, x) for u in unit), unit)
        p = len(centers)
        entries.append(CoverEntry(index=i, covering_number=p, centers=centers))
        weights.append(i if p == 1 else i + math.log2(p))

    square = [group.mul(u, v) for u in unit for v in unit]
    square_centers = greedy_cover(group, square, unit)
    report = CoveringReport(
        entries=entries,
        square_covering_number=len(square_centers),
        square_centers=square_centers
    )
    logger.info(f"Starred weights for {top} representatives, q = {len(square_centers)}")
    return spec.model_copy(update={"rep_weights": tuple(weights), "count": top, "covering": report})


def verify_starred_growth(spec: TwoLevelSpec, U: Sequence[GroupElement], N: int, budget: int | None = None) -> BoundReport:
    """Counting-measure growth |B_d*(e,n)| <= (4q^2)^(2n+1)·|U| for n = 1..N"""
    if spec.covering is None or spec.covering.square_covering_number is None:
        raise DomainError("Spec has no covering data; run starred_weights first")
    q = spec.covering.square_covering_number
    unit_size = len(_check_unit_set(spec.group, U))
    rows = []
    for n in range(1, N + 1):
        size = len(two_level_ball(spec, n, budget=budget))
        bound = float((4 * q * q) ** (2 * n + 1) * unit_size)
        rows.append(BoundRow(n=n, value=size, bound=bound, passed=size <= bound))
    return BoundReport(name="starred_growth", rows=rows, note=f"q={q}, |U|={unit_size}")


def verify_two_level_locality(
    spec: TwoLevelSpec,
    sample: Sequence[GroupElement],
    cost_cap: Weight,
    budget: int | None = None
) -> ValidationReport:
    """
    On G_0 the two-level length is dominated by l_0, and below 1 it agrees with G_0

    Checks "subgroup_domination" (l(g) <= l_0(g) for g in G_0) and
    "small_ball_agreement" (l(g) < 1 implies g in G_0 and l_0(g) <= l(g)).
    """
    if spec.in_subgroup is None:
        raise DomainError("Locality checks need a subgroup membership test")
    if not sample:
        raise DomainError("Empty sample")
    dominated, agreement = None, None
    for g in sample:
        value = two_level_length(spec, g, cost_cap, budget=budget)
        inside = spec.in_subgroup(g)
        base = word_length(spec.base, g, cost_cap, budget=budget) if inside else math.inf
        if inside and value > base and dominated is None:
            dominated = repr(g)
        if value < 1 and (not inside or base > value) and agreement is None:
            agreement = repr(g)
    checks = [
        AxiomCheck(name="subgroup_domination", passed=dominated is None, witness=dominated),
        AxiomCheck(name="small_ball_agreement", passed=agreement is None, witness=agreement),
    ]
    return ValidationReport(subject="two_level", sample_size=len(sample), checks=checks)
