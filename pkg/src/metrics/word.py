import math
import numbers
from collections.abc import Callable, Iterator, Sequence
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, PrivateAttr

from src.config.settings import get_settings
from src.core.exceptions import (
    BudgetExceeded,
    DomainError,
    IdentityInGeneratingSet,
    NonIntegerWeights,
    NonPositiveWeight,
    NonSymmetricGeneratingSet,
    SchemeMismatch,
)
from src.core.length import LengthFunction, MetricView
from src.core.logger import LoggerFactory
from src.core.model import BallCensus, BoundReport, BoundRow, GrowthCertificate
from src.groups.base import Group, GroupElement
from src.metrics.search import SearchResult, uniform_cost_search

logger = LoggerFactory.create_logger("WordMetric", level=get_settings().LOG_LEVEL)

Weight = int | Fraction | float


def _check_weight(element: GroupElement, weight: Any) -> None:
    if not isinstance(weight, numbers.Real) or not math.isfinite(weight) or weight <= 0:
        raise NonPositiveWeight(
            "Generator weights must be positive and finite",
            details={"generator": repr(element), "weight": repr(weight)}
        )


def is_integral(weight: Weight) -> bool:
    if isinstance(weight, numbers.Integral):
        return True
    if isinstance(weight, Fraction):
        return weight.denominator == 1
    return False


class WeightedGeneratingSet(BaseModel):
    """
    Symmetric weighted generating set S, finite or lazily graded

    A graded set follows the scheme S = {x_n, x_n^-1 : n >= 1} with weight n for
    both x_n and x_n^-1; only the entries with weight <= r are ever materialized.
    """
    group: Group
    explicit: tuple[tuple[Any, Any], ...] = ()
    grading: Callable[[int], Any] | None = None
    max_index: int | None = None
    name: str = "S"

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    _materialized: dict[int, list[tuple[Any, Any]]] = PrivateAttr(default_factory=dict)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_entries(
        cls,
        group: Group,
        entries: Sequence[tuple[Any, Weight]],
        symmetrize: bool = True,
        name: str = "S"
    ) -> "WeightedGeneratingSet":
        """
        Build a finite generating set

        Args:
            group: Ambient group
            entries: (generator, weight) pairs; generators may be loose encodings
            symmetrize: Add s^-1 with the weight of s; otherwise require it listed
            name: Label used in reports

        Raises:
            IdentityInGeneratingSet, NonPositiveWeight, NonSymmetricGeneratingSet
        """
        table: dict[Any, Any] = {}
        for raw, weight in entries:
            element = group.canonicalize(raw)
            _check_weight(element, weight)
            if group.is_identity(element):
                raise IdentityInGeneratingSet("The identity cannot be a generator", details={"name": name})
            if element in table and table[element] != weight:
                raise NonSymmetricGeneratingSet(
                    "Generator listed twice with different weights",
                    details={"generator": repr(element), "weights": [repr(table[element]), repr(weight)]}
                )
            table[element] = weight

        for element, weight in list(table.items()):
            inverse = group.inv(element)
            if inverse in table:
                if table[inverse] != weight:
                    raise NonSymmetricGeneratingSet(
                        "weight(s^-1) differs from weight(s)",
                        details={
                            "generator": repr(element),
                            "weight": repr(weight),
                            "inverse_weight": repr(table[inverse]),
                        }
                    )
            elif symmetrize:
                table[inverse] = weight
            else:
                raise NonSymmetricGeneratingSet(
                    "Inverse of a generator is missing",
                    details={"generator": repr(element)}
                )
        return cls(group=group, explicit=tuple(table.items()), name=name)

    @classmethod
    def standard(cls, group: Group, weight: Weight = 1) -> "WeightedGeneratingSet":
        """The group's standard generators and their inverses, all of one weight"""
        return cls.from_entries(group, [(g, weight) for g in group.generators()], name="standard")

    @classmethod
    def graded(
        cls,
        group: Group,
        generator: Callable[[int], Any],
        max_index: int | None = None,
        name: str = "graded"
    ) -> "WeightedGeneratingSet":
        """
        Graded scheme l(x_n) = l(x_n^-1) = n

        Args:
            group: Ambient group
            generator: n -> x_n for n >= 1 (loose encodings allowed)
            max_index: Truncate the scheme at x_max_index; None keeps it infinite
        """
        return cls(group=group, grading=generator, max_index=max_index, name=name)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    @property
    def is_finite(self) -> bool:
        return self.grading is None or self.max_index is not None

    def integer_weights(self) -> bool:
        return self.is_graded or all(is_integral(w) for _, w in self.explicit)

    def min_weight(self) -> Weight:
        if self.is_graded:
            return 1
        return min(w for _, w in self.explicit)

    def entries_up_to(self, radius: Weight, budget: int | None = None) -> list[tuple[Any, Any]]:
        """All (generator, weight) with weight <= radius, by weight then listing order"""
        if not self.is_graded:
            return sorted(
                ((g, w) for g, w in self.explicit if w <= radius),
                key=lambda item: item[1]
            )

        top = math.floor(radius)
        if self.max_index is not None:
            top = min(top, self.max_index)
        if top in self._materialized:
            return self._materialized[top]

        limit = budget if budget is not None else get_settings().COARSE_METRIC_BUDGET
        if top > limit:
            raise BudgetExceeded(
                "Graded scheme would materialize too many generators",
                details={"radius": float(radius), "budget": limit}
            )
        seen: dict[Any, int] = {}
        for n in range(1, top + 1):
            x = self.group.canonicalize(self.grading(n))  # type: ignore[misc]
            if self.group.is_identity(x):
                raise IdentityInGeneratingSet("Graded scheme produced the identity", details={"index": n})
            for element in (x, self.group.inv(x)):
                seen.setdefault(element, n)
        entries = list(seen.items())
        self._materialized[top] = entries
        return entries

    def weight(self, element: GroupElement) -> Weight | None:
        if not self.is_graded:
            return dict(self.explicit).get(element)
        top = self.max_index if self.max_index is not None else int(get_settings().DEFAULT_COST_CAP)
        for n in range(1, top + 1):
            x = self.group.canonicalize(self.grading(n))  # type: ignore[misc]
            if element == x or element == self.group.inv(x):
                return n
        return None

    def expander(self, cost_cap: Weight, budget: int | None = None):
        """Cayley-graph edges g -> g·s for the search, cheapest generators first"""
        entries = self.entries_up_to(cost_cap, budget=budget)
        group = self.group

        def expand(node, remaining):
            for label, (s, w) in enumerate(entries):
                if w > remaining:
                    break
                yield group.mul(node, s), w, label

        return expand, entries

    def __repr__(self) -> str:
        size = "graded" if self.is_graded else len(self.explicit)
        return f"WeightedGeneratingSet(name={self.name!r}, group={self.group!r}, entries={size})"


# ============================================================================
# Word length and balls
# ============================================================================

def _search(
    gens: WeightedGeneratingSet,
    cost_cap: Weight,
    target: GroupElement | None = None,
    budget: int | None = None
) -> SearchResult:
    if not cost_cap > 0:
        raise DomainError("cost_cap must be positive", details={"cost_cap": repr(cost_cap)})
    limit = budget if budget is not None else get_settings().COARSE_METRIC_BUDGET
    expand, _ = gens.expander(cost_cap, budget=limit)
    return uniform_cost_search(gens.group.identity, expand, cost_cap, target=target, budget=limit)


def word_length(
    gens: WeightedGeneratingSet,
    g: GroupElement,
    cost_cap: Weight,
    budget: int | None = None
) -> Weight:
    """
    Least total weight of a factorization of g over S

    Returns the exact infimum when it is <= cost_cap and math.inf otherwise.
    """
    g = gens.group.canonicalize(g)
    if gens.group.is_identity(g):
        return 0
    result = _search(gens, cost_cap, target=g, budget=budget)
    return result.distances.get(g, math.inf)


def enumerate_ball(gens: WeightedGeneratingSet, n: Weight, budget: int | None = None) -> frozenset:
    """D(e, n) = {g : word_length(g) <= n}"""
    if n < 0:
        raise DomainError("Ball radius must be non-negative", details={"radius": repr(n)})
    if n == 0:
        return frozenset({gens.group.identity})
    return frozenset(_search(gens, n, budget=budget).distances)


def _census_from(distances: dict[Any, Any], N: int) -> BallCensus:
    ball_sizes, sphere_sizes = [], []
    values = list(distances.values())
    for n in range(N + 1):
        ball_sizes.append(sum(1 for v in values if v <= n))
        sphere_sizes.append(sum(1 for v in values if v == n))
    return BallCensus(
        radii=list(range(N + 1)),
        ball_sizes=ball_sizes,
        sphere_sizes=sphere_sizes,
        distances=dict(distances)
    )


def sphere_counts(gens: WeightedGeneratingSet, N: int, budget: int | None = None) -> BallCensus:
    """Census of |D(e,n)| and |∂(e,n)| for n = 0..N; needs integer weights"""
    if N < 1:
        raise DomainError("Census radius must be at least 1", details={"N": N})
    if not gens.integer_weights():
        raise NonIntegerWeights("Spheres need integer weights", details={"name": gens.name})
    census = _census_from(_search(gens, N, budget=budget).distances, N)
    logger.info(f"Census of {gens.name} up to radius {N}: ball sizes {census.ball_sizes}")
    return census


def growth_certificate(census: BallCensus) -> GrowthCertificate:
    """
    Exponential envelope for the census

    beta = max(1, |D(e,1)|) and alpha the smallest rate with
    |D(e,n)| <= beta·e^(alpha n) on the whole grid.
    """
    if not census.radii:
        raise DomainError("Census is empty")
    N = census.max_radius
    if N < 1:
        return GrowthCertificate(alpha=0.0, beta=1.0, grid_bound=0)

    beta = float(max(1, census.ball_size(1)))
    alpha = max(
        0.0,
        max((math.log(census.ball_size(n)) - math.log(beta)) / n for n in range(1, N + 1))
    )
    rate = None
    if N >= 2:
        rate = math.log(census.ball_size(N) / census.ball_size(N - 1))
    certificate = GrowthCertificate(alpha=alpha, beta=beta, grid_bound=N, rate_estimate=rate)
    logger.debug(f"Growth certificate alpha={alpha:.6f} beta={beta} over n <= {N}")
    return certificate


# ============================================================================
# Graded scheme bounds
# ============================================================================

def _require_graded(gens: WeightedGeneratingSet) -> None:
    if gens.is_graded:
        return
    by_weight: dict[Any, list[Any]] = {}
    for element, weight in gens.explicit:
        if not is_integral(weight):
            raise SchemeMismatch("Graded weights are integers", details={"weight": repr(weight)})
        by_weight.setdefault(int(weight), []).append(element)
    for weight, members in by_weight.items():
        x = members[0]
        if any(m not in (x, gens.group.inv(x)) for m in members):
            raise SchemeMismatch(
                "Each weight n must carry only x_n and its inverse",
                details={"weight": weight, "count": len(members)}
            )


def verify_3n_bound(gens: WeightedGeneratingSet, N: int, budget: int | None = None) -> BoundReport:
    """|D(e,n)| <= 3^n for n = 1..N under the graded scheme"""
    _require_graded(gens)
    census = sphere_counts(gens, N, budget=budget)
    rows = [
        BoundRow(n=n, value=census.ball_size(n), bound=3 ** n, passed=census.ball_size(n) <= 3 ** n)
        for n in range(1, N + 1)
    ]
    return BoundReport(name="ball_3n", rows=rows)


def verify_sphere_bound(gens: WeightedGeneratingSet, N: int, budget: int | None = None) -> BoundReport:
    """|∂(e,n)| <= 2·3^(n-1) for n = 1..N under the graded scheme"""
    _require_graded(gens)
    census = sphere_counts(gens, N, budget=budget)
    rows = [
        BoundRow(
            n=n, value=census.sphere_size(n), bound=2 * 3 ** (n - 1),
            passed=census.sphere_size(n) <= 2 * 3 ** (n - 1)
        )
        for n in range(1, N + 1)
    ]
    return BoundReport(name="sphere_2x3n", rows=rows)


# ============================================================================
# Compositions
# ============================================================================

def count_compositions(n: int, k: int) -> int:
    """Number of (n_1..n_k) of positive integers with sum <= n, which is C(n, k)"""
    if k < 1 or k > n:
        raise DomainError("Need 1 <= k <= n", details={"n": n, "k": k})
    return math.comb(n, k)


def enumerate_compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of positive integers with sum <= n, lexicographically"""
    if k == 0:
        yield ()
        return
    for first in range(1, n - k + 2):
        for rest in enumerate_compositions(n - first, k - 1):
            yield (first, *rest)


# ============================================================================
# Cached word metric
# ============================================================================

class WordMetric:
    """Left invariant word metric d(x, y) = l(y^-1 x) with a cached ball around e"""

    def __init__(self, gens: WeightedGeneratingSet, budget: int | None = None):
        self.gens = gens
        self.group = gens.group
        self.budget = budget if budget is not None else get_settings().COARSE_METRIC_BUDGET
        self.logger = LoggerFactory.create_logger("WordMetric", level=get_settings().LOG_LEVEL)
        self._radius: Weight = 0
        self._distances: dict[Any, Any] = {self.group.identity: 0}
        self._steps: dict[Any, int] = {self.group.identity: 0}
        # g -> (largest cap searched, length or inf)
        self._targeted: dict[Any, tuple[Any, Any]] = {}

    @property
    def radius(self) -> Weight:
        return self._radius

    def ensure_radius(self, radius: Weight) -> None:
        """Make the cached ball cover every element of length <= radius"""
        if radius <= self._radius:
            return
        result = _search(self.gens, radius, budget=self.budget)
        self._radius = radius
        self._distances = result.distances
        self._steps = result.steps
        self.logger.debug(f"Cached ball of radius {radius}: {len(result.distances)} elements")

    def ball_distances(self, radius: Weight) -> dict[Any, Any]:
        """{g: l(g)} for every g with l(g) <= radius"""
        self.ensure_radius(radius)
        if radius == self._radius:
            return self._distances
        return {g: v for g, v in self._distances.items() if v <= radius}

    def length(self, g: GroupElement, cost_cap: Weight | None = None) -> Weight:
        if g in self._distances:
            return self._distances[g]
        cap = cost_cap if cost_cap is not None else get_settings().DEFAULT_COST_CAP
        if cap <= self._radius:
            return math.inf
        searched, value = self._targeted.get(g, (0, math.inf))
        if value < math.inf or cap <= searched:
            return value if value <= cap else math.inf
        value = word_length(self.gens, g, cap, budget=self.budget)
        self._targeted[g] = (cap, value)
        return value

    def length_within(self, g: GroupElement, radius: Weight) -> Weight | None:
        """l(g) if l(g) <= radius, else None; radius must not exceed the cache"""
        self.ensure_radius(radius)
        value = self._distances.get(g)
        if value is None or value > radius:
            return None
        return value

    def distance(self, x: GroupElement, y: GroupElement) -> Weight:
        return self.length(self.group.mul(self.group.inv(y), x))

    def ball(self, radius: Weight, center: GroupElement | None = None, strict: bool = False) -> list:
        """Closed (or open, with strict) ball, ordered by distance then element"""
        self.ensure_radius(radius)
        members = [
            (v, self.group.sort_key(g), g) for g, v in self._distances.items()
            if (v < radius if strict else v <= radius)
        ]
        members.sort(key=lambda item: (item[0], item[1]))
        if center is None:
            return [g for _, _, g in members]
        return [self.group.mul(center, g) for _, _, g in members]

    def census(self, N: int) -> BallCensus:
        if N < 1:
            raise DomainError("Census radius must be at least 1", details={"N": N})
        return _census_from(self.ball_distances(N), N)

    def length_function(self, cost_cap: Weight | None = None) -> LengthFunction:
        return LengthFunction(
            group=self.group,
            evaluator=lambda g: self.length(g, cost_cap),
            name=f"word[{self.gens.name}]",
            source="word_length"
        )

    def metric_view(self) -> MetricView:
        return MetricView(
            evaluator=self.distance,
            name=f"word[{self.gens.name}]",
            group=self.group,
            source="word_length"
        )

    def __repr__(self) -> str:
        return f"WordMetric(gens={self.gens!r}, cached_radius={self._radius})"
