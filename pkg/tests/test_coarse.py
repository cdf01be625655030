import pytest

from src.coarse.envelopes import (
    SAMPLE_SCOPE,
    expansiveness_envelope,
    plig_coarse_equivalence_probe,
    sample_pairs,
    verify_uniform_embedding,
)
from src.coarse.fixtures import DisjointCloudSpace
from src.coarse.lattice import bounded_geometry_census, build_coarse_lattice, retract_to_lattice
from src.core.exceptions import DomainError, EmptyInput, EmptySample, OutOfRange
from src.core.length import MetricView
from src.metrics.word import WeightedGeneratingSet, WordMetric


def line_metric(integers):
    return MetricView(evaluator=lambda x, y: abs(x[0] - y[0]), name="line", group=integers)


def test_unit_lattice_keeps_every_point(plane):
    metric = WordMetric(WeightedGeneratingSet.standard(plane))
    points = metric.ball(3)
    lattice = build_coarse_lattice(points, metric.metric_view(), 1.0)
    assert lattice.points == points
    assert lattice.covering_radius == 0.0
    assert lattice.min_pairwise_distance() >= 1


def test_greedy_lattice_on_integers(integers):
    points = [(i,) for i in range(-4, 5)]
    lattice = build_coarse_lattice(points, line_metric(integers), 2.0)
    assert lattice.points == [(-4,), (-2,), (0,), (2,), (4,)]
    assert lattice.covering_radius == 1.0
    assert lattice.input_size == 9
    assert retract_to_lattice(lattice, (3,)) == (2,)
    assert retract_to_lattice(lattice, (4,)) == (4,)


def test_retraction_outside_every_cell(integers):
    lattice = build_coarse_lattice([(0,), (2,)], line_metric(integers), 2.0)
    with pytest.raises(OutOfRange):
        retract_to_lattice(lattice, (5,))


def test_lattice_input_checks(integers):
    with pytest.raises(DomainError):
        build_coarse_lattice([(0,)], line_metric(integers), 0.0)
    with pytest.raises(EmptyInput):
        build_coarse_lattice([], line_metric(integers), 1.0)


def test_bounded_geometry_census(integers):
    points = [(i,) for i in range(-10, 11)]
    volume = lambda r: sum(1 for i in range(-20, 21) if abs(i) < r)
    lattice = build_coarse_lattice(points, line_metric(integers), 1.0, ball_volume=volume)
    census = bounded_geometry_census(lattice, 3)
    assert census.gamma == 7
    assert census.ratio_bound == 7.0
    assert census.passed
    assert bounded_geometry_census(lattice, 0.5).gamma == 1


def test_euclidean_census_on_plane(plane):
    view = MetricView(
        evaluator=lambda x, y: plane.euclidean_norm(plane.mul(plane.inv(y), x)),
        name="euclidean",
        group=plane
    )
    points = [(x, y) for x in range(-5, 6) for y in range(-5, 6)]
    lattice = build_coarse_lattice(points, view, 1.0, ball_volume=plane.euclidean_ball_volume)
    census = bounded_geometry_census(lattice, 1)
    assert census.gamma == 5
    assert census.passed


def test_disjoint_clouds_have_unbounded_geometry():
    gammas = []
    for m in (2, 4, 8):
        space = DisjointCloudSpace(m)
        lattice = build_coarse_lattice(space.points(), space.metric(), 1.0)
        assert len(lattice.points) == len(space.points())
        gammas.append(bounded_geometry_census(lattice, 1).gamma)
    assert gammas == [3, 5, 9]


def test_cloud_distances():
    assert DisjointCloudSpace.distance((2, 1), (3, 2)) == 3
    assert DisjointCloudSpace.distance((2, 0), (3, 0)) == 1
    assert DisjointCloudSpace.distance((4, 1), (4, 3)) == 1
    assert DisjointCloudSpace.distance((4, 1), (4, 1)) == 0
    assert DisjointCloudSpace(3).center(3) == (3, 0)
    with pytest.raises(DomainError):
        DisjointCloudSpace(0)


def test_expansiveness_of_scalings(integers):
    d = line_metric(integers)
    pairs = sample_pairs([(i,) for i in range(6)])
    identity = expansiveness_envelope(lambda x: x, d, d, pairs)
    assert identity.S(3) == 3
    assert identity.finite
    doubled = expansiveness_envelope(lambda x: (2 * x[0],), d, d, pairs)
    assert doubled.S(3) == 6
    assert doubled.S(0.5) == 0.0


def test_uniform_embedding_verdicts(integers):
    d = line_metric(integers)
    pairs = sample_pairs([(i,) for i in range(8)])
    identity = verify_uniform_embedding(lambda x: x, d, d, pairs)
    assert identity.verdict == "PASS"
    assert identity.rho_minus == identity.rho_plus == identity.grid
    assert identity.scope == SAMPLE_SCOPE
    constant = verify_uniform_embedding(lambda x: (0,), d, d, pairs)
    assert constant.verdict == "FAIL"
    assert constant.rho_plus == [0.0] * len(constant.grid)


def test_sample_pairs_subsample_is_seeded():
    sample = list(range(30))
    assert len(sample_pairs(sample)) == 435
    chosen = sample_pairs(sample, max_pairs=20, seed=4)
    assert len(chosen) == 20
    assert chosen == sample_pairs(sample, max_pairs=20, seed=4)


def test_coarse_equivalence_of_word_metrics(integers):
    word = WordMetric(WeightedGeneratingSet.standard(integers))
    doubled = WordMetric(WeightedGeneratingSet.from_entries(integers, [((1,), 2), ((2,), 3)]))
    report = plig_coarse_equivalence_probe(word.metric_view(), doubled.metric_view(), word.ball(6))
    assert report.verdict == "PASS"
    assert report.forward.S(1) == 2
    with pytest.raises(EmptySample):
        plig_coarse_equivalence_probe(word.metric_view(), doubled.metric_view(), [(0,)])


def test_heisenberg_word_metrics_are_coarsely_equivalent(heisenberg):
    standard = WordMetric(WeightedGeneratingSet.standard(heisenberg))
    wider = WordMetric(WeightedGeneratingSet.from_entries(
        heisenberg, [((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1)]
    ))
    standard.ensure_radius(6)
    wider.ensure_radius(6)
    report = plig_coarse_equivalence_probe(
        standard.metric_view(), wider.metric_view(), standard.ball(3), max_pairs=300, seed=0
    )
    assert report.verdict == "PASS"


def test_single_point_and_self_retraction(integers):
    lattice = build_coarse_lattice([(7,)], line_metric(integers), 1.0)
    assert lattice.points == [(7,)]
    assert lattice.covering_radius == 0.0
    assert retract_to_lattice(lattice, (7,)) == (7,)


def test_equal_metrics_expand_by_the_identity(integers):
    d = line_metric(integers)
    report = plig_coarse_equivalence_probe(d, d, [(i,) for i in range(5)])
    assert report.verdict == "PASS"
    assert [report.forward.S(R) for R in (1, 2, 3)] == [1.0, 2.0, 3.0]
    assert report.backward.upper == report.forward.upper
