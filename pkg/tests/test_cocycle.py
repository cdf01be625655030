import itertools
import math
from fractions import Fraction

import pytest

from src.cocycle.embedding import (
    SANDWICH_THRESHOLD,
    AffinePoint,
    CocycleLayer,
    affine_apply,
    bump_power_sum,
    bump_value,
    cocycle_layer,
    cocycle_vector,
    embedding_constants,
    half_ball_lower_bound,
    half_distance_index,
    layer_norm,
    layer_power_sum,
    norm_upper_bound,
    properness_report,
    sparse_norm,
    tail_bound,
    verify_bump_lipschitz,
    verify_cocycle_identity,
)
from src.core.exceptions import DomainError, InsufficientRange, TruncationMismatch
from src.metrics.word import WeightedGeneratingSet, WordMetric, growth_certificate


def test_bump_values_are_exact(z_metric):
    assert bump_value(2, (0,), (1,), z_metric) == Fraction(1, 2)
    assert bump_value(4, (1,), (0,), z_metric) == Fraction(3, 4)
    assert bump_value(3, (0,), (5,), z_metric) == 0
    with pytest.raises(DomainError):
        bump_value(0, (0,), (0,), z_metric)


def test_bump_half_ball_and_lipschitz(f2_metric):
    assert half_ball_lower_bound(4, (1,), f2_metric).passed
    f2_metric.ensure_radius(4)
    assert verify_bump_lipschitz(3, (), f2_metric.ball(2), f2_metric).passed


def test_second_layer_on_integers(z_metric):
    layer = cocycle_layer(2, (1,), z_metric)
    assert layer.values == {
        (-1,): Fraction(-1, 2),
        (0,): Fraction(-1, 2),
        (1,): Fraction(1, 2),
        (2,): Fraction(1, 2),
    }
    assert layer_power_sum(layer) == Fraction(1, 4)
    assert layer_norm(layer) == pytest.approx(0.25 ** 0.25)
    assert layer.sup_norm() == Fraction(1, 2)


def test_identity_layer_is_zero(f2_metric):
    layer = cocycle_layer(3, (), f2_metric)
    assert layer.is_zero()
    assert layer.sup_norm() == 0


def test_layer_support_and_sup_norm(f2, f2_metric):
    g = f2.canonicalize("ab")
    for n in (1, 2, 3):
        layer = cocycle_layer(n, g, f2_metric)
        ball = set(f2_metric.ball(n, strict=True))
        assert layer.support() <= ball | {f2.mul(g, u) for u in ball}
        assert layer.sup_norm() <= Fraction(2, n)


def test_sparse_norm_matches_direct_sum():
    values = {0: 0.5, 1: -0.25, 2: 1.5}
    direct = sum(abs(v) ** 6 for v in values.values()) ** (1 / 6)
    assert sparse_norm(values, 3) == pytest.approx(direct)
    assert sparse_norm({}, 3) == 0.0


def test_truncated_norm_is_monotone(z_metric):
    norms = [cocycle_vector((6,), z_metric, truncation=N).norm for N in (2, 4, 6, 8)]
    assert norms == sorted(norms)


def test_norm_sandwich_on_integers(z_metric):
    certificate = growth_certificate(z_metric.census(8))
    vector = cocycle_vector((10,), z_metric, truncation=8, certificate=certificate)
    n_g = half_distance_index(vector.distance)
    assert vector.norm ** 2 >= n_g / 4
    assert vector.norm <= vector.norm_plus_tail
    assert vector.norm_plus_tail <= norm_upper_bound(vector.distance, certificate) * (1 + 1e-9)


def test_tail_bound_formula(z_metric):
    certificate = growth_certificate(z_metric.census(4))
    expected = 9 * 2 * certificate.beta * math.exp(certificate.alpha) * sum(1 / n ** 2 for n in range(5, 200_000))
    assert tail_bound(3, certificate, 4) == pytest.approx(expected, rel=1e-4)


def test_half_distance_index():
    assert half_distance_index(4) == 1
    assert half_distance_index(2) is None
    assert half_distance_index(5) == 2
    assert half_distance_index(20) == 9


def test_properness_lower_bounds(z_metric):
    report = properness_report(z_metric, 8, [4, 8, 16])
    assert [row.squared_lower_bound for row in report.rows] == [0.25, 0.75, 1.75]
    assert report.monotone
    assert report.passed
    assert all(row.disjoint_support_passed for row in report.rows)


def test_properness_grid_must_increase(z_metric):
    with pytest.raises(DomainError):
        properness_report(z_metric, 4, [8, 4])


def test_disjoint_layers_double_the_bump(z_metric):
    for n in (1, 2, 3):
        layer = cocycle_layer(n, (2 * n + 1,), z_metric)
        assert layer_power_sum(layer) == 2 * bump_power_sum(n, z_metric)


def test_affine_action_of_identity(f2_metric):
    xi = AffinePoint.from_vector(cocycle_vector((1,), f2_metric, truncation=3))
    moved = affine_apply((), xi, f2_metric, truncation=3)
    assert moved.layers == xi.layers
    assert moved.distance_to(xi) == 0.0
    assert AffinePoint.zero(3).norm() == 0.0


def test_truncation_mismatch(f2_metric):
    xi = AffinePoint.zero(3)
    with pytest.raises(TruncationMismatch):
        affine_apply((1,), xi, f2_metric, truncation=4)
    with pytest.raises(TruncationMismatch):
        xi.distance_to(AffinePoint.zero(2))


def test_cocycle_identity_on_free_group(f2_metric):
    elements = f2_metric.ball(2)
    xi = AffinePoint.from_vector(cocycle_vector((2,), f2_metric, truncation=3))
    report = verify_cocycle_identity(f2_metric, elements, [1, 2, 3], xi=xi)
    assert report.passed
    assert report.check("cocycle_identity").worst_violation == 0.0
    assert report.check("affine_homomorphism").worst_violation == 0.0
    assert report.subject == "cocycle[standard]"


def test_cocycle_identity_on_heisenberg(heisenberg):
    metric = WordMetric(WeightedGeneratingSet.standard(heisenberg))
    report = verify_cocycle_identity(metric, metric.ball(1), [1, 2])
    assert report.passed


def test_embedding_constants_on_integers(z_metric):
    pairs = list(itertools.combinations(z_metric.ball(10), 2))
    constants = embedding_constants(z_metric, 6, pairs)
    assert constants.c3 == SANDWICH_THRESHOLD
    assert constants.c1 > 0
    assert math.isfinite(constants.c2)
    assert constants.translation_passed
    assert constants.min_distance >= SANDWICH_THRESHOLD
    assert constants.max_distance == 20


def test_embedding_constants_need_far_pairs(z_metric):
    with pytest.raises(InsufficientRange):
        embedding_constants(z_metric, 4, [((0,), (1,)), ((0,), (2,))])


def test_bump_edge_values(z_metric):
    assert bump_value(5, (0,), (0,), z_metric) == 1
    assert bump_value(4, (0,), (2,), z_metric) == Fraction(1, 2)
    assert half_ball_lower_bound(4, (1,), z_metric).passed


def test_single_value_layer_norm():
    layer = CocycleLayer(n=1, g=(1,), values={(0,): Fraction(1, 2)})
    assert layer_norm(layer) == pytest.approx(0.5)


def test_identity_vector_is_zero(z_metric):
    vector = cocycle_vector((0,), z_metric, truncation=4)
    assert vector.norm == 0.0
    assert all(layer.is_zero() for layer in vector.layers)


def test_upper_bound_at_distance_four(z_metric):
    certificate = growth_certificate(z_metric.census(8))
    vector = cocycle_vector((4,), z_metric, truncation=8, certificate=certificate)
    assert vector.norm <= norm_upper_bound(4, certificate)


def test_translation_identity_on_free_group(f2_metric):
    pairs = list(itertools.combinations(f2_metric.ball(2), 2))
    constants = embedding_constants(f2_metric, 3, pairs)
    assert constants.translation_error <= 1e-12
