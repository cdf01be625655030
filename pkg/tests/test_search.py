import pytest
from pydantic import ValidationError

from src.core.exceptions import BudgetExceeded
from src.metrics.search import uniform_cost_search

STEPS = [(1, 1), (-1, 1), (3, 2), (-3, 2)]


def expand_line(node, remaining):
    for label, (step, cost) in enumerate(STEPS):
        if cost <= remaining:
            yield node + step, cost, label


def test_search_settles_everything_under_the_cap():
    result = uniform_cost_search(0, expand_line, 2)
    assert result.complete
    assert result.distances == {0: 0, 1: 1, -1: 1, 2: 2, -2: 2, 3: 2, -3: 2}
    assert result.steps[3] == 1


def test_search_stops_at_the_target_with_its_path():
    result = uniform_cost_search(0, expand_line, 10, target=6)
    assert not result.complete
    assert result.distances[6] == 4
    assert result.path_labels(6) == [2, 2]


def test_search_result_is_frozen():
    result = uniform_cost_search(0, expand_line, 1)
    with pytest.raises(ValidationError):
        result.complete = False


def test_search_budget():
    with pytest.raises(BudgetExceeded):
        uniform_cost_search(0, expand_line, 10, budget=5)
