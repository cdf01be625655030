import math

import pytest

from src.core.exceptions import DomainError, UncoverableSet
from src.groups.base import close_under_inverse
from src.metrics.two_level import (
    TwoLevelSpec,
    greedy_cover,
    starred_weights,
    tilde_length,
    two_level_ball,
    two_level_length,
    verify_starred_growth,
    verify_two_level_locality,
)
from src.metrics.word import WeightedGeneratingSet

REPRESENTATIVES = {1: (0, 1), 2: (0, -1), 3: (0, 2), 4: (0, -2)}


@pytest.fixture
def plane_spec(plane):
    """G_0 = Z x {0} inside Z^2 with four vertical coset representatives"""
    base = WeightedGeneratingSet.from_entries(plane, [((1, 0), 1)], name="G0")
    return TwoLevelSpec(
        base=base,
        representative=lambda i: REPRESENTATIVES[i],
        count=4,
        in_subgroup=lambda g: g[1] == 0
    )


@pytest.fixture
def free_spec(f2):
    """G_0 = <a> inside F_2 with the single representative b"""
    base = WeightedGeneratingSet.from_entries(f2, [("a", 1)], name="<a>")
    return TwoLevelSpec(
        base=base,
        representative=lambda i: (2,),
        count=1,
        in_subgroup=lambda g: all(abs(x) == 1 for x in g)
    )


def test_two_level_length_symmetrizes(plane_spec):
    assert tilde_length(plane_spec, (0, 1), 10) == 1
    assert tilde_length(plane_spec, (0, -1), 10) == 2
    assert two_level_length(plane_spec, (0, 1), 10) == 2
    assert two_level_length(plane_spec, (0, 2), 10) == 4
    assert two_level_length(plane_spec, (3, 0), 10) == 3
    assert two_level_length(plane_spec, (0, 0), 10) == 0


def test_two_level_length_is_infinite_past_the_cap(plane_spec):
    assert two_level_length(plane_spec, (0, 2), 3) == math.inf


def test_two_level_balls_are_open(plane_spec):
    assert two_level_ball(plane_spec, 2) == frozenset({(0, 0), (1, 0), (-1, 0)})
    assert len(two_level_ball(plane_spec, 3)) == 7
    assert two_level_ball(plane_spec, 0) == frozenset()


def test_locality_on_the_subgroup(plane_spec):
    sample = [(x, y) for x in range(-3, 4) for y in range(-1, 2)]
    report = verify_two_level_locality(plane_spec, sample, cost_cap=12)
    assert report.passed


def test_representative_inside_subgroup_is_rejected(plane):
    base = WeightedGeneratingSet.from_entries(plane, [((1, 0), 1)])
    spec = TwoLevelSpec(base=base, representative=lambda i: (i, 0), count=2, in_subgroup=lambda g: g[1] == 0)
    with pytest.raises(DomainError):
        tilde_length(spec, (0, 1), 5)


def test_greedy_cover_covers_every_point(f2):
    unit = [(), (1,), (-1,)]
    points = [(1, 1), (1,), (), (-1,), (-1, -1)]
    centers = greedy_cover(f2, points, unit)
    assert len(centers) in (2, 3)
    for p in points:
        assert any(f2.mul(y, u) == p for y in centers for u in unit)


def test_greedy_cover_fails_without_identity_reach(integers):
    with pytest.raises(UncoverableSet):
        greedy_cover(integers, [(1,)], [])


def test_starred_weights_on_free_group(f2, free_spec):
    unit = [(), (1,), (-1,)]
    starred = starred_weights(free_spec, unit)
    assert starred.covering.covering_number(1) == 3
    assert starred.rep_weight(1) == pytest.approx(1 + math.log2(3))
    assert starred.covering.square_covering_number in (2, 3)
    assert verify_starred_growth(starred, unit, 2).passed


def test_starred_growth_needs_covering_data(free_spec):
    with pytest.raises(DomainError):
        verify_starred_growth(free_spec, [(), (1,), (-1,)], 1)


def test_unit_set_must_be_symmetric_with_identity(f2, free_spec):
    with pytest.raises(DomainError):
        starred_weights(free_spec, [(1,), (-1,)])
    with pytest.raises(DomainError):
        starred_weights(free_spec, [(), (1,)])
    assert close_under_inverse(f2, [(1,)]) == [(1,), (-1,)]


def test_trivial_unit_keeps_default_weights(free_spec):
    starred = starred_weights(free_spec, [()])
    assert starred.covering.covering_number(1) == 1
    assert starred.rep_weight(1) == 1


def test_integer_cover_by_one_translate(integers):
    base = WeightedGeneratingSet.from_entries(integers, [((2,), 1)])
    spec = TwoLevelSpec(base=base, representative=lambda i: (2 * i - 1,), count=3, in_subgroup=lambda g: g[0] % 2 == 0)
    starred = starred_weights(spec, [(-1,), (0,), (1,)])
    assert [starred.rep_weight(i) for i in (1, 2, 3)] == [1, 2, 3]
    assert all(starred.rep_weight(i) >= i for i in (1, 2, 3))


def test_starred_lengths_dominate_default_lengths(f2):
    base = WeightedGeneratingSet.from_entries(f2, [("a", 1)], name="<a>")
    spec = TwoLevelSpec(
        base=base,
        representative=lambda i: (2,) if i == 1 else (-2,),
        count=2,
        in_subgroup=lambda g: all(abs(x) == 1 for x in g)
    )
    starred = starred_weights(spec, [(), (1,), (-1,)])
    assert starred.rep_weight(2) == pytest.approx(2 + math.log2(3))
    sample = [(), (1,), (2,), (-2,), (1, 2), (2, 1), (-2, -1), (2, 2)]
    for g in sample:
        assert two_level_length(starred, g, 12) >= two_level_length(spec, g, 12)
    assert two_level_length(spec, (2,), 12) == 2
    assert two_level_length(starred, (2,), 12) == pytest.approx(2 + math.log2(3))
