from fractions import Fraction

import pytest

from src.core.exceptions import DomainError, NotGenerated
from src.metrics.regularized import (
    DeltaLengths,
    minimal_factorization,
    regularized_factorization,
    regularized_length,
    verify_ball_inclusion,
)


def test_regularized_length_is_exact(delta_plane):
    assert regularized_length(delta_plane, (1, 1), cost_cap=5) == Fraction(6, 5)
    assert regularized_length(delta_plane, (0, 0), cost_cap=5) == 0


def test_factorization_multiplies_back(plane, delta_plane):
    factorization = regularized_factorization(delta_plane, (2, -1), cost_cap=5)
    assert factorization.k == 3
    assert factorization.cost == Fraction(9, 5)
    assert plane.product(factorization.factors) == (2, -1)


def test_minimal_factorization(delta_plane):
    witness = minimal_factorization(delta_plane, (1, 1), bound=2)
    assert witness is not None
    assert witness.k == 2
    assert witness.adjacent_sums(delta_plane) == [Fraction(6, 5)]
    assert minimal_factorization(delta_plane, (1, 1), bound=1) is None


def test_ball_inclusion_holds(delta_plane):
    report = verify_ball_inclusion(delta_plane, 4)
    assert report.passed
    assert [row.n for row in report.rows] == [1, 2, 3, 4]
    assert report.rows[0].ball_size == 5
    assert report.rows[1].ball_size == 25
    assert all(row.missing == 0 for row in report.rows)


def test_ball_inclusion_is_vacuous_at_zero(delta_plane):
    report = verify_ball_inclusion(delta_plane, 0)
    assert report.rows == []
    assert report.passed


def test_delta_lengths_are_checked(plane):
    with pytest.raises(DomainError):
        DeltaLengths.build(plane, {(1, 0): 1, (-1, 0): 1})
    with pytest.raises(DomainError):
        DeltaLengths.build(plane, {(0, 0): Fraction(1, 2)})
    delta = DeltaLengths.build(plane, {(1, 0): Fraction(1, 2), (-1, 0): Fraction(1, 2)})
    assert delta.lengths[(0, 0)] == 0


def test_unreachable_elements(plane):
    horizontal = DeltaLengths.build(plane, {(1, 0): Fraction(1, 2), (-1, 0): Fraction(1, 2)})
    with pytest.raises(NotGenerated):
        regularized_factorization(horizontal, (0, 1), cost_cap=4)


def test_regularized_length_agrees_with_delta_on_the_unit_set(plane):
    delta = DeltaLengths.build(plane, {
        (1, 0): Fraction(3, 5), (-1, 0): Fraction(3, 5),
        (0, 1): Fraction(3, 5), (0, -1): Fraction(3, 5),
        (1, 1): Fraction(9, 10), (-1, -1): Fraction(9, 10),
    })
    for u, value in delta.lengths.items():
        assert regularized_length(delta, u, cost_cap=5) == value
    smallest = min(value for value in delta.lengths.values() if value > 0)
    for g in [(x, y) for x in range(-3, 4) for y in range(-3, 4) if (x, y) != (0, 0)]:
        assert regularized_length(delta, g, cost_cap=10) >= smallest
    assert regularized_length(delta, (2, 2), cost_cap=10) == Fraction(9, 5)
