import itertools
import math
from fractions import Fraction

import pytest

from src.core.exceptions import (
    BudgetExceeded,
    DomainError,
    IdentityInGeneratingSet,
    NonIntegerWeights,
    NonPositiveWeight,
    NonSymmetricGeneratingSet,
    SchemeMismatch,
)
from src.core.length import validate_length_axioms
from src.core.model import BallCensus
from src.groups.free import FreeGroup
from src.metrics.word import (
    WeightedGeneratingSet,
    WordMetric,
    count_compositions,
    enumerate_ball,
    enumerate_compositions,
    growth_certificate,
    sphere_counts,
    verify_3n_bound,
    verify_sphere_bound,
    word_length,
)


def graded_integers(group):
    return WeightedGeneratingSet.graded(group, lambda n: (n,))


def test_graded_integers_length_and_spheres(integers):
    gens = graded_integers(integers)
    metric = WordMetric(gens)
    assert metric.length((5,)) == 5
    assert len(metric.ball(3)) == 7
    census = sphere_counts(gens, 3)
    assert census.sphere_sizes == [1, 2, 2, 2]
    assert census.ball_sizes == [1, 3, 5, 7]


def test_graded_entries_materialize_lazily(integers):
    gens = graded_integers(integers)
    entries = gens.entries_up_to(3)
    assert [w for _, w in entries] == [1, 1, 2, 2, 3, 3]
    assert gens.weight((-4,)) == 4
    assert not gens.is_finite


def test_free_group_ball_sizes(f2_metric):
    assert f2_metric.census(4).ball_sizes == [1, 5, 17, 53, 161]


def test_free_group_growth_rate(f2_metric):
    certificate = growth_certificate(f2_metric.census(8))
    assert certificate.beta == 5.0
    assert certificate.rate_estimate == pytest.approx(math.log(3), abs=0.05)
    assert certificate.holds(f2_metric.census(8))


def test_short_census_has_no_rate(z_metric):
    certificate = growth_certificate(z_metric.census(1))
    assert certificate.rate_estimate is None
    assert certificate.beta == 3.0


def test_graded_free_group_bounds():
    group = FreeGroup(5)
    gens = WeightedGeneratingSet.graded(group, lambda n: (n,), max_index=5)
    assert verify_3n_bound(gens, 6).passed
    assert verify_sphere_bound(gens, 6).passed


def test_explicit_graded_set_is_accepted(integers):
    gens = WeightedGeneratingSet.from_entries(integers, [((1,), 1), ((2,), 2), ((3,), 3)])
    report = verify_3n_bound(gens, 4)
    assert report.passed
    assert [row.value for row in report.rows] == [3, 5, 7, 9]


def test_standard_free_set_is_not_graded(f2):
    with pytest.raises(SchemeMismatch):
        verify_3n_bound(WeightedGeneratingSet.standard(f2), 3)


def test_compositions_match_binomials():
    for n in range(1, 9):
        for k in range(1, n + 1):
            brute = sum(
                1 for c in itertools.product(range(1, n + 1), repeat=k) if sum(c) <= n
            )
            assert count_compositions(n, k) == brute == len(list(enumerate_compositions(n, k)))
    with pytest.raises(DomainError):
        count_compositions(3, 4)


def test_weighted_lengths(integers):
    gens = WeightedGeneratingSet.from_entries(integers, [((1,), 2), ((3,), 5)])
    assert word_length(gens, (3,), 10) == 5
    assert word_length(gens, (4,), 10) == 7
    halves = WeightedGeneratingSet.from_entries(integers, [((1,), Fraction(1, 2))])
    assert word_length(halves, (2,), 4) == 1


def test_word_length_beyond_the_cap_is_infinite(integers):
    gens = WeightedGeneratingSet.standard(integers)
    assert word_length(gens, (10,), 3) == math.inf
    assert word_length(gens, (0,), 3) == 0


def test_ball_order_is_distance_then_element(z_metric):
    assert z_metric.ball(2) == [(0,), (-1,), (1,), (-2,), (2,)]
    assert z_metric.ball(2, strict=True) == [(0,), (-1,), (1,)]
    assert z_metric.ball(1, center=(10,)) == [(10,), (9,), (11,)]


def test_enumerate_ball_matches_cached_ball(f2, f2_metric):
    ball = enumerate_ball(WeightedGeneratingSet.standard(f2), 3)
    assert ball == frozenset(f2_metric.ball(3))
    assert enumerate_ball(WeightedGeneratingSet.standard(f2), 0) == frozenset({()})


def test_word_metric_is_a_length_function(f2_metric):
    sample = f2_metric.ball(2)
    assert validate_length_axioms(f2_metric.length_function(), sample).passed


def test_generating_set_errors(integers):
    with pytest.raises(NonSymmetricGeneratingSet):
        WeightedGeneratingSet.from_entries(integers, [((1,), 1), ((-1,), 2)], symmetrize=False)
    with pytest.raises(NonSymmetricGeneratingSet):
        WeightedGeneratingSet.from_entries(integers, [((1,), 1)], symmetrize=False)
    with pytest.raises(NonPositiveWeight):
        WeightedGeneratingSet.from_entries(integers, [((1,), 0)])
    with pytest.raises(NonPositiveWeight):
        WeightedGeneratingSet.from_entries(integers, [((1,), float("nan"))])
    with pytest.raises(IdentityInGeneratingSet):
        WeightedGeneratingSet.from_entries(integers, [((0,), 1)])


def test_spheres_need_integer_weights(integers):
    gens = WeightedGeneratingSet.from_entries(integers, [((1,), Fraction(1, 2))])
    with pytest.raises(NonIntegerWeights):
        sphere_counts(gens, 2)


def test_census_radius_must_be_positive(z_metric):
    with pytest.raises(DomainError):
        z_metric.census(0)


def test_budget_is_enforced(f2):
    with pytest.raises(BudgetExceeded):
        sphere_counts(WeightedGeneratingSet.standard(f2), 5, budget=10)


@pytest.mark.parametrize(("word", "expected"), [("abA", 3), ("", 0), ("aaB", 3), ("abBA", 0)])
def test_free_group_word_lengths(f2, word, expected):
    gens = WeightedGeneratingSet.standard(f2)
    assert word_length(gens, f2.canonicalize(word), 6) == expected


@pytest.mark.parametrize(("n", "k", "expected"), [(4, 2, 6), (5, 5, 1), (6, 1, 6), (12, 6, 924)])
def test_composition_counts(n, k, expected):
    assert count_compositions(n, k) == expected


def test_graded_certificate_and_single_point_census(integers):
    certificate = growth_certificate(WordMetric(graded_integers(integers)).census(10))
    assert certificate.alpha <= math.log(3)
    trivial = BallCensus(radii=[0, 1], ball_sizes=[1, 1], sphere_sizes=[1, 0])
    certificate = growth_certificate(trivial)
    assert certificate.alpha == 0.0
    assert certificate.beta == 1.0


def test_cached_infinite_length_is_searched_again_under_a_larger_cap(integers):
    metric = WordMetric(WeightedGeneratingSet.standard(integers))
    assert metric.length((10,), cost_cap=3) == math.inf
    assert metric.length((10,), cost_cap=20) == 10
    assert metric.length((10,), cost_cap=5) == math.inf
    assert metric.length((10,), cost_cap=10) == 10


def test_graded_integer_spheres_up_to_ten(integers):
    census = sphere_counts(graded_integers(integers), 10)
    assert census.sphere_sizes == [1] + [2] * 10
    assert census.ball_sizes == [2 * n + 1 for n in range(11)]
    assert verify_3n_bound(graded_integers(integers), 10).passed
    assert verify_sphere_bound(graded_integers(integers), 10).passed


def test_adding_a_generator_never_increases_length(integers):
    small = WeightedGeneratingSet.standard(integers)
    large = WeightedGeneratingSet.from_entries(integers, [((1,), 1), ((3,), 2)])
    for m in range(-15, 16):
        assert word_length(large, (m,), 20) <= word_length(small, (m,), 20)
    assert word_length(large, (6,), 20) == 4
    assert word_length(small, (6,), 20) == 6
