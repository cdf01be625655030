import itertools
import math
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, computed_field

from src.cocycle.embedding import (
    AffinePoint,
    cocycle_vector,
    embedding_constants,
    half_ball_lower_bound,
    norm_upper_bound,
    properness_report,
    verify_bump_lipschitz,
    verify_cocycle_identity,
)
from src.coarse.envelopes import plig_coarse_equivalence_probe, sample_pairs, verify_uniform_embedding
from src.coarse.fixtures import DisjointCloudSpace
from src.coarse.lattice import bounded_geometry_census, build_coarse_lattice, retract_to_lattice
from src.config.settings import Settings
from src.core.exceptions import (
    ConfigError,
    GeneratingSetError,
    NonPositiveWeight,
    NonSymmetricGeneratingSet,
)
from src.core.length import MetricView, validate_length_axioms, validate_metric_axioms
from src.core.logger import LoggerFactory
from src.core.model import AxiomCheck, BoundReport, BoundRow
from src.experiments.config import ExperimentConfig
from src.experiments.export import (
    CENSUS_FIELDS,
    EMBEDDING_FIELDS,
    ENVELOPE_FIELDS,
    census_rows,
    embedding_rows,
    envelope_rows,
    write_csv,
    write_json,
)
from src.groups.base import Group
from src.groups.factory import build_group
from src.groups.free import FreeGroup
from src.groups.heisenberg import HeisenbergGroup
from src.groups.lattice import IntegerLattice
from src.groups.matrix import GeneralLinearGroup, SquareMatrix
from src.metrics.matrix import (
    gl_length,
    gl_length_function,
    gl_metric,
    gl_metric_view,
    load_matrix_samples,
    properness_probe,
    random_gl_samples,
    verify_norm_domination,
    verify_product_bound,
)
from src.metrics.regularized import DeltaLengths, verify_ball_inclusion
from src.metrics.two_level import (
    TwoLevelSpec,
    starred_weights,
    two_level_length,
    verify_starred_growth,
    verify_two_level_locality,
)
from src.metrics.word import (
    WeightedGeneratingSet,
    WordMetric,
    count_compositions,
    enumerate_compositions,
    growth_certificate,
    verify_3n_bound,
    verify_sphere_bound,
)

VERIFY_SUITES = (
    "generating-set",
    "compositions",
    "graded-growth",
    "ball-inclusion",
    "two-level",
    "cocycle",
    "bump",
    "sandwich",
    "properness",
    "gl",
    "lattice",
    "coarse-equivalence",
)


class SuiteResult(BaseModel):
    """Named checks produced by one experiment or verification suite"""
    name: str
    checks: dict[str, bool]
    details: dict[str, Any] = {}

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def violations(self) -> list[str]:
        return [f"{self.name}/{check}" for check, ok in self.checks.items() if not ok]


class RunResult(BaseModel):
    """Outcome of one CLI subcommand"""
    experiment: str
    suites: list[SuiteResult]
    files: list[str]

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    def violations(self) -> list[str]:
        return [name for suite in self.suites for name in suite.violations()]


def exact_weight(value: float) -> int | Fraction:
    """Config weights as exact numbers: 2.0 -> 2, 0.6 -> 3/5"""
    if float(value).is_integer():
        return int(value)
    return Fraction(str(value))


def graded_generator(group: Group) -> tuple[Callable[[int], Any], int | None]:
    """x_n for the graded scheme on the groups that have a natural one"""
    if isinstance(group, IntegerLattice) and group.rank == 1:
        return (lambda n: (n,)), None
    if isinstance(group, FreeGroup):
        return (lambda n: (n,)), group.rank
    raise ConfigError("No graded scheme for this group", details={"group": repr(group)})


class ExperimentRunner:
    """Runs one configured experiment and writes its CSV/JSON artifacts"""

    def __init__(self, config: ExperimentConfig, out_dir: str | Path, settings: Settings):
        self.config = config
        self.settings = settings
        self.out_dir = Path(out_dir)
        self.seed = config.seed if config.seed is not None else settings.DEFAULT_SEED
        self.truncation = config.truncation if config.truncation is not None else settings.DEFAULT_TRUNCATION
        self.logger = LoggerFactory.create_logger("ExperimentRunner", level=settings.LOG_LEVEL)
        self.files: list[str] = []

    # ------------------------------------------------------------------
    # Dispatch
    # ------------------------------------------------------------------

    def run(self) -> RunResult:
        commands = {
            "growth": self.cmd_growth,
            "embed": self.cmd_embed,
            "lattice": self.cmd_lattice,
            "verify": self.cmd_verify,
            "gl": self.cmd_gl,
        }
        self.logger.info(f"=== Running '{self.config.experiment}' (seed {self.seed}) ===")
        suites = commands[self.config.experiment]()
        result = RunResult(experiment=self.config.experiment, suites=suites, files=list(self.files))
        self._write_json("run_summary.json", result)
        if result.passed:
            self.logger.info(f"'{self.config.experiment}' passed; {len(self.files)} files in {self.out_dir}")
        else:
            self.logger.warning(f"'{self.config.experiment}' violations: {result.violations()}")
        return result

    def _write_csv(self, name: str, fieldnames: list[str], rows: list[dict[str, Any]]) -> None:
        self.files.append(str(write_csv(self.out_dir / name, fieldnames, rows)))

    def _write_json(self, name: str, payload: Any) -> None:
        self.files.append(str(write_json(self.out_dir / name, payload)))

    # ------------------------------------------------------------------
    # Shared builders
    # ------------------------------------------------------------------

    def _group(self) -> Group:
        return build_group(self.config.group)

    def _generating_set(self, group: Group) -> WeightedGeneratingSet:
        spec = self.config.generating_set
        if isinstance(group, GeneralLinearGroup):
            raise ConfigError("Word metrics need a discrete group", details={"group": repr(group)})
        match spec.scheme:
            case "standard":
                return WeightedGeneratingSet.standard(group, spec.weight)
            case "graded":
                generator, max_index = graded_generator(group)
                return WeightedGeneratingSet.graded(group, generator, max_index=spec.max_index or max_index)
            case "explicit":
                entries = [(raw, exact_weight(w)) for raw, w in spec.entries or []]
                return WeightedGeneratingSet.from_entries(
                    group, entries, symmetrize=spec.symmetrize, name="explicit"
                )

    def _word_metric(self) -> WordMetric:
        group = self._group()
        return WordMetric(self._generating_set(group), budget=self.settings.COARSE_METRIC_BUDGET)

    # ------------------------------------------------------------------
    # growth
    # ------------------------------------------------------------------

    def cmd_growth(self) -> list[SuiteResult]:
        metric = self._word_metric()
        return [self._growth_suite(metric, self.config.radius, write=True)]

    def _growth_suite(self, metric: WordMetric, N: int, write: bool = False) -> SuiteResult:
        census = metric.census(N)
        certificate = growth_certificate(census)
        checks = {"certificate": certificate.holds(census)}
        reports: list[BoundReport] = []
        if metric.gens.is_graded:
            reports = [verify_3n_bound(metric.gens, N), verify_sphere_bound(metric.gens, N)]
            checks.update({report.name: report.passed for report in reports})
        self.logger.info(
            f"Growth of {metric.gens.name} to N={N}: α={certificate.alpha:.6g}, β={certificate.beta:.6g}, "
            f"rate≈{certificate.rate_estimate}"
        )
        if write:
            rows = census_rows(census, certificate, graded=metric.gens.is_graded)
            self._write_csv("growth_census.csv", CENSUS_FIELDS, rows)
            self._write_json("growth_certificate.json", {
                "group": metric.group.describe(),
                "generating_set": metric.gens.name,
                "N": N,
                "certificate": certificate.model_dump(mode="json"),
                "bounds": [report.model_dump(mode="json") for report in reports],
            })
        return SuiteResult(name="growth", checks=checks, details={"alpha": certificate.alpha, "beta": certificate.beta})

    # ------------------------------------------------------------------
    # embed
    # ------------------------------------------------------------------

    def cmd_embed(self) -> list[SuiteResult]:
        metric = self._word_metric()
        N = self.truncation
        certificate = growth_certificate(metric.census(N))
        sample = metric.ball(self.config.radius)
        pairs = sample_pairs(sample, max_pairs=self.config.max_pairs, seed=self.seed)
        constants = embedding_constants(metric, N, pairs, certificate)

        elements = metric.ball(self.config.identity_radius)
        layers = [n for n in self.config.identity_layers if n <= N]
        identity = verify_cocycle_identity(metric, elements, layers)

        grid = self.config.grid or [float(r) for r in range(4, self.config.radius + 1, 4)]
        properness = properness_report(metric, N, grid, certificate)
        upper = BoundReport(
            name="norm_upper",
            rows=[
                BoundRow(
                    n=row.distance, value=row.norm, bound=norm_upper_bound(row.distance, certificate),
                    passed=row.norm <= norm_upper_bound(row.distance, certificate)
                )
                for row in properness.rows
            ]
        )

        points: dict[Any, AffinePoint] = {}

        def embed(g):
            if g not in points:
                points[g] = AffinePoint.from_vector(cocycle_vector(g, metric, N, certificate))
            return points[g]

        envelope = verify_uniform_embedding(embed, metric.distance, lambda a, b: a.distance_to(b), pairs)
        if envelope.verdict == "FAIL":
            self.logger.warning(f"Uniform embedding envelope FAIL ({envelope.scope})")

        self._write_csv("embedding_rows.csv", EMBEDDING_FIELDS, embedding_rows(properness))
        self._write_csv("embedding_envelope.csv", ENVELOPE_FIELDS, envelope_rows(envelope))
        self._write_json("embedding_constants.json", {
            "c1": constants.c1,
            "c2": constants.c2,
            "c3": constants.c3,
            "alpha": certificate.alpha,
            "beta": certificate.beta,
            "N_trunc": N,
            "constants": constants.model_dump(mode="json"),
            "cocycle_identity": identity.model_dump(mode="json"),
            "properness": properness.model_dump(mode="json"),
            "envelope_verdict": envelope.verdict,
            "envelope_scope": envelope.scope,
        })
        checks = {
            "cocycle_identity": identity.passed,
            "sandwich": constants.c1 > 0 and math.isfinite(constants.c2),
            "translation_identity": constants.translation_passed,
            "properness": properness.passed,
            "norm_upper": upper.passed,
        }
        return [SuiteResult(name="embed", checks=checks, details={"c1": constants.c1, "c2": constants.c2})]

    # ------------------------------------------------------------------
    # lattice
    # ------------------------------------------------------------------

    def cmd_lattice(self) -> list[SuiteResult]:
        if self.config.clouds:
            return [self._cloud_suite(self.config.clouds)]
        return [self._lattice_suite(
            self._word_metric(), self.config.radius, self.config.separation, self.config.lattice_metric, write=True
        )]

    def _lattice_metric(self, metric: WordMetric, kind: str) -> tuple[MetricView, Callable[[float], int]]:
        group = metric.group
        if kind == "euclidean":
            if not isinstance(group, IntegerLattice):
                raise ConfigError("The euclidean metric needs an integer lattice")
            view = MetricView(
                evaluator=lambda x, y: group.euclidean_norm(group.mul(group.inv(y), x)),
                name=f"euclidean[Z^{group.rank}]",
                group=group,
                source="euclidean_norm"
            )
            return view, group.euclidean_ball_volume
        return metric.metric_view(), lambda r: len(metric.ball(r, strict=True))

    def _lattice_suite(
        self,
        metric: WordMetric,
        radius: int,
        separation: float,
        kind: str,
        write: bool = False
    ) -> SuiteResult:
        points = metric.ball(radius)
        view, volume = self._lattice_metric(metric, kind)
        lattice = build_coarse_lattice(points, view, separation, ball_volume=volume)
        censuses = [bounded_geometry_census(lattice, M) for M in self.config.census_radii]
        retraction_ok = all(
            view(retract_to_lattice(lattice, y), y) <= lattice.separation for y in points
        )
        checks = {
            "separated": lattice.min_pairwise_distance() >= lattice.separation,
            "covering": lattice.covering_radius <= lattice.separation,
            "retraction": retraction_ok,
            **{f"census_M={census.M:g}": census.passed for census in censuses},
        }
        if write:
            self._write_csv(
                "lattice_points.csv", ["index", "point"],
                [{"index": i, "point": repr(p)} for i, p in enumerate(lattice.points)]
            )
            self._write_csv(
                "lattice_census.csv", ["M", "gamma", "ratio_bound", "passed"],
                [census.model_dump() for census in censuses]
            )
            self._write_json("lattice_summary.json", {
                "metric": view.name,
                "input_size": lattice.input_size,
                "lattice_size": len(lattice.points),
                "separation": lattice.separation,
                "covering_radius": lattice.covering_radius,
                "censuses": [census.model_dump(mode="json") for census in censuses],
            })
        return SuiteResult(name="lattice", checks=checks, details={"lattice_size": len(lattice.points)})

    def _cloud_suite(self, clouds: list[int]) -> SuiteResult:
        M = self.config.census_radii[0]
        rows = []
        for m in clouds:
            space = DisjointCloudSpace(m)
            lattice = build_coarse_lattice(space.points(), space.metric(), self.config.separation)
            census = bounded_geometry_census(lattice, M)
            rows.append({"clouds": m, "M": M, "gamma": census.gamma})
            self.logger.info(f"{m} clouds: Γ_{M:g} = {census.gamma}")
        gammas = [row["gamma"] for row in rows]
        growing = all(a <= b for a, b in zip(gammas, gammas[1:])) and gammas[-1] > gammas[0]
        self._write_csv("lattice_clouds.csv", ["clouds", "M", "gamma"], rows)
        return SuiteResult(name="clouds", checks={"gamma_grows": growing}, details={"gamma": gammas})

    # ------------------------------------------------------------------
    # gl
    # ------------------------------------------------------------------

    def cmd_gl(self) -> list[SuiteResult]:
        return [self._gl_suite(write=True)]

    def _gl_samples(self, dimension: int) -> list[SquareMatrix]:
        if self.config.sample_file is not None:
            return load_matrix_samples(self.config.sample_file)
        return random_gl_samples(dimension, self.config.samples, self.seed)

    def _gl_suite(self, write: bool = False) -> SuiteResult:
        dimension = self.config.group.dimension if self.config.group.kind == "matrix" else 2
        samples = self._gl_samples(dimension)
        group = GeneralLinearGroup(samples[0].dimension)
        tol = self.settings.FLOAT_TOLERANCE

        lengths = validate_length_axioms(
            gl_length_function(group), samples, tolerance=tol,
            max_pairs=self.config.max_triples, seed=self.seed
        )
        metric = validate_metric_axioms(
            gl_metric_view(group), samples, tolerance=tol,
            max_triples=self.config.max_triples, seed=self.seed
        )
        exact = AxiomCheck(
            name="exact_values",
            passed=gl_length(group.identity) == 0 and all(gl_length(A) == gl_length(A.inverse) for A in samples)
        )
        product = verify_product_bound(samples, tolerance=tol)
        domination = verify_norm_domination(samples, tolerance=tol)
        probe = properness_probe(self.config.properness_radius, samples, tolerance=tol)

        checks = {
            **{f"length/{check.name}": check.passed for check in lengths.checks},
            **{f"metric/{check.name}": check.passed for check in metric.checks},
            exact.name: exact.passed,
            product.name: product.passed,
            domination.name: domination.passed,
            "properness_probe": probe.passed,
        }
        if write:
            self._write_json("gl_report.json", {
                "dimension": group.dimension,
                "samples": len(samples),
                "seed": self.seed,
                "length_axioms": lengths.model_dump(mode="json"),
                "metric_axioms": metric.model_dump(mode="json"),
                "exact_values": exact.model_dump(mode="json"),
                "product_bound": {"passed": product.passed, "pairs": len(product.rows)},
                "norm_domination": {"passed": domination.passed, "samples": len(domination.rows)},
                "properness_probe": probe.model_dump(mode="json", exclude={"rows"}),
            })
        return SuiteResult(name="gl", checks=checks)

    # ------------------------------------------------------------------
    # verify
    # ------------------------------------------------------------------

    def cmd_verify(self) -> list[SuiteResult]:
        """Every invariant suite at desk scale; `suites` in the config selects a subset"""
        selected = self.config.suites or list(VERIFY_SUITES)
        unknown = sorted(set(selected) - set(VERIFY_SUITES))
        if unknown:
            raise ConfigError("Unknown verification suites", details={"suites": unknown})
        runners = {
            "generating-set": self._verify_generating_set,
            "compositions": self._verify_compositions,
            "graded-growth": self._verify_graded_growth,
            "ball-inclusion": self._verify_ball_inclusion,
            "two-level": self._verify_two_level,
            "cocycle": self._verify_cocycle,
            "bump": self._verify_bump,
            "sandwich": self._verify_sandwich,
            "properness": self._verify_properness,
            "gl": self._gl_suite,
            "lattice": self._verify_lattice,
            "coarse-equivalence": self._verify_coarse_equivalence,
        }
        results = []
        for name in VERIFY_SUITES:
            if name not in selected:
                continue
            result = runners[name]()
            self.logger.info(f"Suite {name}: {'pass' if result.passed else 'FAIL'}")
            results.append(result.model_copy(update={"name": name}))
        self._write_json("verify_report.json", {
            "suites": [result.model_dump(mode="json") for result in results],
            "violations": [v for result in results for v in result.violations()],
        })
        return results

    @staticmethod
    def _rejection(exc: GeneratingSetError) -> dict[str, Any]:
        """Exception fields without the timestamp, so reports stay reproducible"""
        return {"error": type(exc).__name__, "message": exc.message, "details": exc.details}

    def _verify_generating_set(self) -> SuiteResult:
        """Length axioms of the configured word metric; bad weights become named failures"""
        group = self._group()
        try:
            gens = self._generating_set(group)
        except NonSymmetricGeneratingSet as exc:
            self.logger.error(f"Generating set breaks symmetry: {exc}")
            return SuiteResult(name="generating-set", checks={"symmetry": False}, details=self._rejection(exc))
        except NonPositiveWeight as exc:
            self.logger.error(f"Generating set breaks definiteness: {exc}")
            return SuiteResult(name="generating-set", checks={"definiteness": False}, details=self._rejection(exc))
        except GeneratingSetError as exc:
            self.logger.error(f"Generating set rejected: {exc}")
            return SuiteResult(name="generating-set", checks={"generating_set": False}, details=self._rejection(exc))
        metric = WordMetric(gens, budget=self.settings.COARSE_METRIC_BUDGET)
        sample = metric.ball(min(self.config.radius, 3))
        report = validate_length_axioms(metric.length_function(), sample)
        return SuiteResult(name="generating-set", checks={check.name: check.passed for check in report.checks})

    def _verify_compositions(self) -> SuiteResult:
        ok = all(
            sum(1 for _ in enumerate_compositions(n, k)) == count_compositions(n, k) == math.comb(n, k)
            for n in range(1, 13) for k in range(1, n + 1)
        )
        return SuiteResult(name="compositions", checks={"count_matches_binomial": ok})

    def _verify_graded_growth(self) -> SuiteResult:
        checks = {}
        for label, group in (("Z", IntegerLattice(1)), ("F5", FreeGroup(5))):
            generator, max_index = graded_generator(group)
            gens = WeightedGeneratingSet.graded(group, generator, max_index=max_index)
            for report in (verify_3n_bound(gens, 8), verify_sphere_bound(gens, 8)):
                checks[f"{label}/{report.name}"] = report.passed
        return SuiteResult(name="graded-growth", checks=checks)

    def _verify_ball_inclusion(self) -> SuiteResult:
        group = IntegerLattice(2)
        delta = DeltaLengths.build(group, {u: Fraction(3, 5) for u in [(1, 0), (-1, 0), (0, 1), (0, -1)]})
        report = verify_ball_inclusion(delta, 4, budget=self.settings.COARSE_METRIC_BUDGET)
        return SuiteResult(
            name="ball-inclusion",
            checks={f"n={row.n}": row.passed for row in report.rows}
        )

    def _verify_two_level(self) -> SuiteResult:
        checks = {}
        plane = IntegerLattice(2)
        vertical = {1: (0, 1), 2: (0, -1), 3: (0, 2), 4: (0, -2)}
        plane_spec = TwoLevelSpec(
            base=WeightedGeneratingSet.from_entries(plane, [((1, 0), 1)], name="Zx0"),
            representative=lambda i: vertical[i],
            count=len(vertical),
            in_subgroup=lambda g: g[1] == 0
        )
        sample = [(x, y) for x in range(-3, 4) for y in range(-2, 3)]
        locality = verify_two_level_locality(
            plane_spec, sample, cost_cap=12, budget=self.settings.COARSE_METRIC_BUDGET
        )
        checks.update({f"Z2/{check.name}": check.passed for check in locality.checks})

        free = FreeGroup(2)
        free_spec = TwoLevelSpec(
            base=WeightedGeneratingSet.from_entries(free, [("a", 1)], name="<a>"),
            representative=lambda i: (2,) if i == 1 else (-2,),
            count=2,
            in_subgroup=lambda g: all(abs(x) == 1 for x in g)
        )
        unit = [(), (1,), (-1,)]
        starred = starred_weights(free_spec, unit)
        checks["F2/starred_growth"] = verify_starred_growth(starred, unit, 2).passed
        checks["F2/starred_dominates"] = all(
            two_level_length(starred, g, 12) >= two_level_length(free_spec, g, 12)
            for g in WordMetric(WeightedGeneratingSet.standard(free)).ball(2)
        )
        return SuiteResult(name="two-level", checks=checks)

    def _verify_bump(self) -> SuiteResult:
        metric = WordMetric(WeightedGeneratingSet.standard(FreeGroup(2)))
        metric.ensure_radius(4)
        x = (1,)
        sample = metric.ball(2, center=x)
        checks = {}
        for n in (1, 2, 4):
            checks[f"n={n}/half_ball"] = half_ball_lower_bound(n, x, metric).passed
            checks[f"n={n}/lipschitz"] = verify_bump_lipschitz(n, x, sample, metric).passed
        return SuiteResult(name="bump", checks=checks)

    def _verify_cocycle(self) -> SuiteResult:
        metric = WordMetric(WeightedGeneratingSet.standard(FreeGroup(2)))
        elements = metric.ball(self.config.identity_radius)
        report = verify_cocycle_identity(metric, elements, self.config.identity_layers)
        return SuiteResult(name="cocycle", checks={check.name: check.passed for check in report.checks})

    def _integer_metric(self) -> WordMetric:
        return WordMetric(WeightedGeneratingSet.standard(IntegerLattice(1)))

    def _verify_sandwich(self) -> SuiteResult:
        metric = self._integer_metric()
        pairs = list(itertools.combinations(metric.ball(20), 2))
        constants = embedding_constants(metric, 8, pairs)
        return SuiteResult(
            name="sandwich",
            checks={
                "c1_positive": constants.c1 > 0,
                "c2_finite": math.isfinite(constants.c2),
                "translation_identity": constants.translation_passed,
            },
            details={"c1": constants.c1, "c2": constants.c2}
        )

    def _verify_properness(self) -> SuiteResult:
        metric = self._integer_metric()
        certificate = growth_certificate(metric.census(20))
        report = properness_report(metric, 8, list(range(4, 21)), certificate)
        upper = all(row.norm <= norm_upper_bound(row.distance, certificate) for row in report.rows)
        return SuiteResult(name="properness", checks={"lower_bounds": report.passed, "upper_bound": upper})

    def _verify_lattice(self) -> SuiteResult:
        metric = WordMetric(WeightedGeneratingSet.standard(IntegerLattice(2)))
        return self._lattice_suite(metric, 10, 1.0, "euclidean")

    def _verify_coarse_equivalence(self) -> SuiteResult:
        checks = {}

        integers = IntegerLattice(1)
        word = WordMetric(WeightedGeneratingSet.standard(integers))
        generator, _ = graded_generator(integers)
        graded = WordMetric(WeightedGeneratingSet.graded(integers, generator))
        sample = word.ball(20)
        report = plig_coarse_equivalence_probe(
            word.metric_view(), graded.metric_view(), sample, max_pairs=self.config.max_pairs, seed=self.seed
        )
        checks["Z/word_vs_graded"] = report.verdict == "PASS"

        heisenberg = HeisenbergGroup()
        h_metric = WordMetric(WeightedGeneratingSet.standard(heisenberg))
        h_metric.ensure_radius(12)
        matrices: dict[Any, SquareMatrix] = {}

        def as_matrix(x):
            if x not in matrices:
                matrices[x] = SquareMatrix(heisenberg.to_matrix(x))
            return matrices[x]

        restricted = MetricView(
            evaluator=lambda x, y: gl_metric(as_matrix(x), as_matrix(y)),
            name="gl3_restricted",
            group=heisenberg,
            source="gl_metric"
        )
        report = plig_coarse_equivalence_probe(
            h_metric.metric_view(), restricted, h_metric.ball(6),
            max_pairs=self.config.max_pairs, seed=self.seed
        )
        checks["H3/word_vs_gl3"] = report.verdict == "PASS"
        return SuiteResult(name="coarse-equivalence", checks=checks)
