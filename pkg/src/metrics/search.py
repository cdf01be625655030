import heapq
import itertools
from collections.abc import Callable, Hashable, Iterable
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import BudgetExceeded

Expander = Callable[[Hashable, Any], Iterable[tuple[Hashable, Any, int]]]


class SearchResult(BaseModel):
    """Settled nodes of a capped uniform-cost search"""
    distances: dict[Any, Any]
    steps: dict[Any, int]
    parents: dict[Any, tuple[Any, int]] = Field(repr=False)
    cost_cap: Any
    complete: bool

    model_config = ConfigDict(frozen=True)

    def path_labels(self, node: Hashable) -> list[int]:
        """Edge labels along the recorded least-cost path from the start"""
        labels: list[int] = []
        while node in self.parents:
            node, label = self.parents[node]
            labels.append(label)
        labels.reverse()
        return labels


def uniform_cost_search(
    start: Hashable,
    expand: Expander,
    cost_cap: Any,
    target: Hashable | None = None,
    budget: int | None = None
) -> SearchResult:
    """
    Least-cost search from `start`, never settling nodes above `cost_cap`

    Priorities are (cost, steps, insertion order), so among least-cost paths
    the one with fewest edges is kept, and further ties go to the edge
    generated first.

    Args:
        start: Start node
        expand: (node, remaining budget) -> iterable of (neighbor, edge cost, label);
            may skip edges costing more than the remaining budget
        cost_cap: Largest path cost explored
        target: Stop as soon as this node is settled
        budget: Maximum number of settled nodes

    Returns:
        SearchResult; `complete` is False when the search stopped at `target`
    """
    counter = itertools.count()
    frontier: list[tuple[Any, int, int, Hashable]] = [(0, 0, next(counter), start)]
    best: dict[Hashable, tuple[Any, int]] = {start: (0, 0)}
    parents: dict[Hashable, tuple[Hashable, int]] = {}
    distances: dict[Hashable, Any] = {}
    steps: dict[Hashable, int] = {}

    while frontier:
        cost, depth, _, node = heapq.heappop(frontier)
        if node in distances:
            continue
        distances[node] = cost
        steps[node] = depth
        if budget is not None and len(distances) > budget:
            raise BudgetExceeded(
                "Search settled more nodes than the budget allows",
                details={"budget": budget, "cost_cap": float(cost_cap)}
            )
        if target is not None and node == target:
            return SearchResult(
                distances=distances, steps=steps, parents=parents, cost_cap=cost_cap, complete=False
            )

        for neighbor, edge_cost, label in expand(node, cost_cap - cost):
            new_cost = cost + edge_cost
            if new_cost > cost_cap or neighbor in distances:
                continue
            priority = (new_cost, depth + 1)
            known = best.get(neighbor)
            if known is None or priority < known:
                best[neighbor] = priority
                parents[neighbor] = (node, label)
                heapq.heappush(frontier, (new_cost, depth + 1, next(counter), neighbor))

    return SearchResult(
        distances=distances, steps=steps, parents=parents, cost_cap=cost_cap, complete=True
    )
