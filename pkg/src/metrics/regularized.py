import math
from collections.abc import Mapping
from typing import Any

from pydantic import BaseModel, ConfigDict, computed_field

from src.config.settings import get_settings
from src.core.exceptions import BudgetExceeded, DomainError, NotGenerated
from src.core.logger import LoggerFactory
from src.groups.base import Group, GroupElement
from src.metrics.word import Weight, WeightedGeneratingSet, _search

logger = LoggerFactory.create_logger("Regularized", level=get_settings().LOG_LEVEL)


class DeltaLengths(BaseModel):
    """Finite symmetric unit set U with δ-lengths in (0, 1) off the identity"""
    group: Group
    lengths: dict[Any, Any]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @classmethod
    def build(cls, group: Group, lengths: Mapping[Any, Weight]) -> "DeltaLengths":
        table: dict[Any, Any] = {}
        for raw, value in lengths.items():
            u = group.canonicalize(raw)
            if group.is_identity(u):
                if value != 0:
                    raise DomainError("The identity has δ-length 0", details={"value": repr(value)})
            elif not 0 < value < 1:
                raise DomainError("δ-lengths lie in (0, 1)", details={"element": repr(u), "value": repr(value)})
            table[u] = value
        table.setdefault(group.identity, 0)
        return cls(group=group, lengths=table)

    @property
    def unit(self) -> list[GroupElement]:
        return list(self.lengths)

    def generating_set(self) -> WeightedGeneratingSet:
        """U without e as a symmetric weighted generating set"""
        return WeightedGeneratingSet.from_entries(
            self.group,
            [(u, w) for u, w in self.lengths.items() if not self.group.is_identity(u)],
            symmetrize=False,
            name="U_delta"
        )


class Factorization(BaseModel):
    """g = g_1 ... g_k with g_i in U"""
    element: Any
    factors: list[Any]
    cost: Any

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def k(self) -> int:
        return len(self.factors)

    def adjacent_sums(self, delta: DeltaLengths) -> list[Any]:
        return [
            delta.lengths[a] + delta.lengths[b]
            for a, b in zip(self.factors, self.factors[1:])
        ]


def regularized_length(delta: DeltaLengths, g: GroupElement, cost_cap: Weight, budget: int | None = None) -> Weight:
    """l(g) = inf{ sum l_δ(g_i) : g = g_1...g_k, g_i in U }"""
    return regularized_factorization(delta, g, cost_cap, budget=budget).cost


def regularized_factorization(
    delta: DeltaLengths,
    g: GroupElement,
    cost_cap: Weight,
    budget: int | None = None
) -> Factorization:
    """
    Least-cost factorization of g over U, fewest factors among least-cost ones

    Raises:
        NotGenerated: g is not reachable within cost_cap
    """
    group = delta.group
    g = group.canonicalize(g)
    if group.is_identity(g):
        return Factorization(element=g, factors=[], cost=0)
    gens = delta.generating_set()
    result = _search(gens, cost_cap, target=g, budget=budget)
    if g not in result.distances:
        raise NotGenerated(
            "Element not reached within the cost cap",
            details={"element": repr(g), "cost_cap": float(cost_cap)}
        )
    _, entries = gens.expander(cost_cap)
    factors = [entries[label][0] for label in result.path_labels(g)]
    return Factorization(element=g, factors=factors, cost=result.distances[g])


def minimal_factorization(
    delta: DeltaLengths,
    g: GroupElement,
    bound: Weight,
    budget: int | None = None
) -> Factorization | None:
    """
    Fewest factors g = g_1...g_k over U with sum l_δ(g_i) < bound

    Layer k holds, for every element reachable with exactly k factors, the least
    such cost. Returns None when no representation stays below `bound`.
    """
    group = delta.group
    g = group.canonicalize(g)
    if group.is_identity(g):
        return Factorization(element=g, factors=[], cost=0)
    limit = budget if budget is not None else get_settings().COARSE_METRIC_BUDGET
    steps = [(u, w) for u, w in delta.lengths.items() if not group.is_identity(u)]
    max_k = math.floor(bound / min(w for _, w in steps)) + 1

    layers: list[dict[Any, tuple[Any, Any, Any]]] = [{group.identity: (0, None, None)}]
    for k in range(1, max_k + 1):
        layer: dict[Any, tuple[Any, Any, Any]] = {}
        for h, (cost, _, _) in layers[-1].items():
            for u, w in steps:
                total = cost + w
                if not total < bound:
                    continue
                x = group.mul(h, u)
                if x not in layer or total < layer[x][0]:
                    layer[x] = (total, h, u)
        if len(layer) > limit:
            raise BudgetExceeded("Factorization layer exceeds the budget", details={"k": k, "budget": limit})
        layers.append(layer)
        if g in layer:
            factors, node = [], g
            for level in range(k, 0, -1):
                _, parent, u = layers[level][node]
                factors.append(u)
                node = parent
            factors.reverse()
            return Factorization(element=g, factors=factors, cost=layer[g][0])
        if not layer:
            break
    return None


class InclusionRow(BaseModel):
    """B_d(e,n) against U^(2n-1) for one n"""
    n: int
    ball_size: int
    product_size: int
    missing: int
    max_factors: int
    adjacent_pairs_ok: bool

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.missing == 0 and self.max_factors <= 2 * self.n - 1 and self.adjacent_pairs_ok


class InclusionReport(BaseModel):
    """Ball inclusion B_d(e,n) ⊆ U^(2n-1) over n = 1..N"""
    rows: list[InclusionRow]

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def _product_powers(group: Group, unit: list[GroupElement], top: int, budget: int) -> list[set]:
    """[U^1, U^2, ..., U^top]; e in U makes the powers nested"""
    powers = [set(unit)]
    for _ in range(top - 1):
        nxt = {group.mul(p, u) for p in powers[-1] for u in unit}
        if len(nxt) > budget:
            raise BudgetExceeded("Product set exceeds the budget", details={"size": len(nxt), "budget": budget})
        powers.append(nxt)
    return powers


def verify_ball_inclusion(delta: DeltaLengths, N: int, budget: int | None = None) -> InclusionReport:
    """
    Check B_d(e,n) ⊆ U^(2n-1) for n = 1..N, with open balls of the regularized length

    Cost grows like |U|^(2N-1) products before canonical forms collapse
    duplicates; the budget caps the size of each power. Every ball element also
    gets a minimal factorization whose factor count and adjacent pairs
    (l_δ(g_i) + l_δ(g_i+1) >= 1) are checked. N = 0 is a vacuous pass.
    """
    limit = budget if budget is not None else get_settings().COARSE_METRIC_BUDGET
    if N < 1:
        return InclusionReport(rows=[])
    group = delta.group
    unit = delta.unit
    powers = _product_powers(group, unit, 2 * N - 1, limit)
    distances = _search(delta.generating_set(), N, budget=limit).distances

    rows = []
    for n in range(1, N + 1):
        ball = [g for g, value in distances.items() if value < n]
        product = powers[2 * n - 2]
        missing = sum(1 for g in ball if g not in product)
        max_factors, pairs_ok = 0, True
        for g in ball:
            witness = minimal_factorization(delta, g, n, budget=limit)
            if witness is None:
                pairs_ok = False
                continue
            max_factors = max(max_factors, witness.k)
            if any(s < 1 for s in witness.adjacent_sums(delta)):
                pairs_ok = False
        rows.append(InclusionRow(
            n=n, ball_size=len(ball), product_size=len(product), missing=missing,
            max_factors=max_factors, adjacent_pairs_ok=pairs_ok
        ))
        logger.debug(f"n={n}: |B|={len(ball)}, |U^{2 * n - 1}|={len(product)}, missing={missing}")
    return InclusionReport(rows=rows)
