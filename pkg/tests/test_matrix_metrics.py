import json
import math

import numpy as np
import pytest

from src.core.exceptions import ConfigError, NonFinite
from src.core.length import validate_length_axioms, validate_metric_axioms
from src.groups.matrix import GeneralLinearGroup, SquareMatrix
from src.metrics.matrix import (
    gl_length,
    gl_length_function,
    gl_metric,
    gl_metric_view,
    load_matrix_samples,
    operator_norm,
    properness_probe,
    random_gl_samples,
    random_sl2_words,
    verify_norm_domination,
    verify_product_bound,
)


@pytest.fixture
def samples():
    return random_gl_samples(2, 20, seed=0)


def test_exact_values():
    group = GeneralLinearGroup(2)
    assert gl_length(group.identity) == 0
    A = SquareMatrix(np.diag([2.0, 0.5]))
    assert gl_length(A) == pytest.approx(math.log(2))
    assert gl_metric(A, A) == pytest.approx(0.0, abs=1e-12)


def test_length_is_symmetric_bit_for_bit(samples):
    for A in samples:
        assert gl_length(A) == gl_length(A.inverse)


def test_length_axioms_on_samples(samples):
    group = GeneralLinearGroup(2)
    report = validate_length_axioms(gl_length_function(group), samples, max_pairs=400, seed=0)
    assert report.passed


def test_metric_axioms_on_samples(samples):
    group = GeneralLinearGroup(2)
    report = validate_metric_axioms(gl_metric_view(group), samples[:12], max_triples=2000, seed=0)
    assert report.passed
    assert "left_invariance" in [check.name for check in report.checks]


def test_norm_bounds(samples):
    assert verify_product_bound(samples).passed
    assert verify_norm_domination(samples).passed


def test_properness_probe(samples):
    report = properness_probe(2.0, samples)
    assert report.passed
    assert report.sampled == len(samples)
    assert report.inside <= len(samples)
    with pytest.raises(ConfigError):
        properness_probe(0.0, samples)


def test_sl2_words_have_unit_determinant():
    for A in random_sl2_words(10, 6, seed=1):
        assert np.linalg.det(A.entries) == pytest.approx(1.0)


def test_samplers_are_seeded():
    assert random_gl_samples(2, 5, seed=3) == random_gl_samples(2, 5, seed=3)
    assert random_gl_samples(3, 2, seed=3)[0].dimension == 3


def test_load_matrix_samples(tmp_path):
    path = tmp_path / "samples.json"
    path.write_text(json.dumps([[[2.0, 0.0], [0.0, 1.0]], [[1.0, 1.0], [0.0, 1.0]]]))
    loaded = load_matrix_samples(path)
    assert len(loaded) == 2
    assert gl_length(loaded[0]) == pytest.approx(math.log(2))

    empty = tmp_path / "empty.json"
    empty.write_text("[]")
    with pytest.raises(ConfigError):
        load_matrix_samples(empty)
    with pytest.raises(ConfigError):
        load_matrix_samples(tmp_path / "missing.json")


def test_operator_norm_rejects_non_finite():
    assert operator_norm(np.diag([3.0, -1.0])) == pytest.approx(3.0)
    with pytest.raises(NonFinite):
        operator_norm(np.array([[np.inf, 0.0], [0.0, 1.0]]))


@pytest.mark.parametrize(
    ("entries", "expected"),
    [
        (np.eye(2), 1.0),
        (np.diag([2.0, 0.5]), 2.0),
        ([[math.cos(0.7), -math.sin(0.7)], [math.sin(0.7), math.cos(0.7)]], 1.0),
    ]
)
def test_operator_norm_examples(entries, expected):
    assert operator_norm(SquareMatrix(entries)) == pytest.approx(expected)


def test_one_by_one_matrices():
    assert gl_length(SquareMatrix([[2.0]])) == pytest.approx(math.log(2))
    assert gl_metric(SquareMatrix([[4.0]]), SquareMatrix([[2.0]])) == pytest.approx(math.log(2))


def test_identity_is_always_inside_the_probe():
    report = properness_probe(0.1, [GeneralLinearGroup(2).identity])
    assert report.inside == 1
    assert report.passed


def test_properness_on_short_sl2_words():
    words = random_sl2_words(50, 5, seed=2)
    report = properness_probe(5.0, words)
    assert report.passed
    assert report.inside == len(words)
    assert all(row.norm <= math.exp(5.0) for row in report.rows)
    assert verify_norm_domination(words).passed
