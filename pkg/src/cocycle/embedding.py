import math
import numbers
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field
from scipy.special import logsumexp, zeta

from src.config.settings import get_settings
from src.core.exceptions import DomainError, InsufficientRange, TruncationMismatch
from src.core.logger import LoggerFactory
from src.core.model import AxiomCheck, GrowthCertificate, ValidationReport
from src.groups.base import GroupElement
from src.metrics.word import WordMetric, growth_certificate

logger = LoggerFactory.create_logger("CocycleEmbedding", level=get_settings().LOG_LEVEL)

SparseVector = dict[Any, Any]

# Pairs closer than this are excluded from the embedding sandwich
SANDWICH_THRESHOLD = 3


# ============================================================================
# Bump functions
# ============================================================================

def _bump(n: int, d: Any) -> Any:
    """max(0, 1 - d/n), exact for rational distances"""
    if d >= n:
        return 0
    if isinstance(d, numbers.Rational):
        return 1 - Fraction(d) / n
    return 1.0 - float(d) / n


def _phi(metric: WordMetric, n: int, y: GroupElement) -> Any:
    """φⁿ_e(y), reading l(y) from the cached ball of radius n"""
    value = metric.length_within(y, n)
    return 0 if value is None else _bump(n, value)


def bump_value(n: int, x: GroupElement, y: GroupElement, metric: WordMetric) -> Any:
    """
    φⁿ_x(y) = 1 - d(x, y)/n inside the open ball B(x, n), 0 outside

    Args:
        n: Scale, at least 1
        x: Center
        y: Evaluation point
        metric: Word metric on the group

    Returns:
        Fraction for integer or rational metrics, float otherwise
    """
    if n < 1:
        raise DomainError("Bump scale must be at least 1", details={"n": n})
    return _bump(n, metric.distance(x, y))


def half_ball_lower_bound(
    n: int,
    x: GroupElement,
    metric: WordMetric,
    sample: Sequence[GroupElement] | None = None
) -> AxiomCheck:
    """Check φⁿ_x >= 1/2 on the closed ball of radius n/2 around x (or on a given sample of it)"""
    half = Fraction(n, 2)
    points = sample if sample is not None else metric.ball(half, center=x)
    worst, witness = 0.0, None
    for y in points:
        if metric.distance(x, y) > half:
            continue
        gap = Fraction(1, 2) - bump_value(n, x, y, metric)
        if gap > worst:
            worst, witness = float(gap), repr(y)
    return AxiomCheck(name="half_ball", passed=witness is None, worst_violation=worst, witness=witness)


def verify_bump_lipschitz(
    n: int,
    x: GroupElement,
    sample: Sequence[GroupElement],
    metric: WordMetric,
    tolerance: float | None = None
) -> AxiomCheck:
    """|φⁿ_x(y) - φⁿ_x(z)| <= d(y, z)/n over all sampled pairs"""
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    values = {y: bump_value(n, x, y, metric) for y in sample}
    worst, witness = 0.0, None
    for y in sample:
        for z in sample:
            d = metric.distance(y, z)
            if isinstance(d, numbers.Rational):
                excess = abs(values[y] - values[z]) - Fraction(d) / n
            else:
                excess = abs(float(values[y]) - float(values[z])) - float(d) / n - tol
            if excess > worst:
                worst, witness = float(excess), f"{y!r}, {z!r}"
    return AxiomCheck(name="bump_lipschitz", passed=witness is None, worst_violation=worst, witness=witness)


def bump_power_sum(n: int, metric: WordMetric) -> Any:
    """Σ_y φⁿ_e(y)^{2n} over the open ball B(e, n), exactly"""
    return sum(_bump(n, metric.length(y)) ** (2 * n) for y in metric.ball(n, strict=True))


# ============================================================================
# Sparse vectors
# ============================================================================

def translate(values: Mapping[Any, Any], s: GroupElement, metric: WordMetric) -> SparseVector:
    """Left regular action: (λ(s)v)(h) = v(s^-1 h), i.e. keys move to s·k"""
    group = metric.group
    return {group.mul(s, k): v for k, v in values.items()}


def _add(*vectors: Mapping[Any, Any]) -> SparseVector:
    total: SparseVector = {}
    for vector in vectors:
        for k, v in vector.items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v != 0}


def _sub(a: Mapping[Any, Any], b: Mapping[Any, Any]) -> SparseVector:
    return _add(a, {k: -v for k, v in b.items()})


def sparse_norm(values: Mapping[Any, Any], n: int) -> float:
    """(Σ |v|^{2n})^{1/(2n)}, accumulated in log space"""
    magnitudes = np.array([abs(float(v)) for v in values.values() if v != 0], dtype=float)
    if magnitudes.size == 0:
        return 0.0
    log_sum = logsumexp(2 * n * np.log(magnitudes))
    return float(np.exp(log_sum / (2 * n)))


# ============================================================================
# Cocycle layers
# ============================================================================

class CocycleLayer(BaseModel):
    """bⁿ(g) = λ(g)φⁿ_e - φⁿ_e as a finitely supported map"""
    n: int
    g: Any
    values: SparseVector

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def support(self) -> set:
        return set(self.values)

    def sup_norm(self) -> Any:
        return max((abs(v) for v in self.values.values()), default=0)

    def is_zero(self) -> bool:
        return not self.values


def cocycle_layer(n: int, g: GroupElement, metric: WordMetric) -> CocycleLayer:
    """
    Materialize h -> φⁿ_e(g^-1 h) - φⁿ_e(h) on B(e, n) ∪ g·B(e, n)

    Raises:
        BudgetExceeded: The ball B(e, n) is too large to enumerate
    """
    if n < 1:
        raise DomainError("Layer index must be at least 1", details={"n": n})
    group = metric.group
    g = group.canonicalize(g)
    g_inv = group.inv(g)
    ball = metric.ball(n, strict=True)
    values: SparseVector = {}
    for h in {*ball, *(group.mul(g, u) for u in ball)}:
        value = _phi(metric, n, group.mul(g_inv, h)) - _phi(metric, n, h)
        if value != 0:
            values[h] = value
    return CocycleLayer(n=n, g=g, values=values)


def layer_norm(layer: CocycleLayer) -> float:
    """‖bⁿ(g)‖_{2n} under counting measure"""
    return sparse_norm(layer.values, layer.n)


def layer_power_sum(layer: CocycleLayer) -> Any:
    """‖bⁿ(g)‖_{2n}^{2n}, exact when the layer values are rational"""
    return sum(v ** (2 * layer.n) for v in layer.values.values())


# ============================================================================
# Truncated cocycle vectors
# ============================================================================

def tail_bound(distance: float, certificate: GrowthCertificate, truncation: int) -> float:
    """d²·2β·e^α·Σ_{n>N} n^-2, bounding the squared norm of the dropped layers"""
    return float(distance) ** 2 * 2 * certificate.beta * math.exp(certificate.alpha) * float(zeta(2, truncation + 1))


def norm_upper_bound(distance: float, certificate: GrowthCertificate) -> float:
    """‖b(g)‖_X <= 2√β·e^{α/2}·d(g, e)"""
    return 2 * math.sqrt(certificate.beta) * math.exp(certificate.alpha / 2) * float(distance)


class CocycleVector(BaseModel):
    """b(g) truncated to layers 1..N, with a bound on what the truncation drops"""
    g: Any
    distance: float
    truncation: int
    layers: list[CocycleLayer]
    layer_norms: list[float]
    tail: float

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @computed_field
    @property
    def norm(self) -> float:
        """Truncated X-norm; a lower bound of the full norm"""
        return math.sqrt(sum(v * v for v in self.layer_norms))

    @computed_field
    @property
    def norm_plus_tail(self) -> float:
        """Upper bound of the full norm"""
        return math.sqrt(self.norm ** 2 + self.tail)


def _certificate(metric: WordMetric, truncation: int, certificate: GrowthCertificate | None) -> GrowthCertificate:
    if certificate is not None:
        return certificate
    return growth_certificate(metric.census(max(truncation, 1)))


def cocycle_vector(
    g: GroupElement,
    metric: WordMetric,
    truncation: int | None = None,
    certificate: GrowthCertificate | None = None
) -> CocycleVector:
    """
    b(g) = ⊕ bⁿ(g) over n = 1..truncation

    Args:
        g: Group element
        metric: Word metric with integer weights
        truncation: Number of layers, DEFAULT_TRUNCATION when omitted
        certificate: Growth constants (α, β) for the tail; computed from the
            census up to the truncation radius when omitted
    """
    N = truncation if truncation is not None else get_settings().DEFAULT_TRUNCATION
    if N < 1:
        raise DomainError("Truncation must be at least 1", details={"truncation": N})
    cert = _certificate(metric, N, certificate)
    layers = [cocycle_layer(n, g, metric) for n in range(1, N + 1)]
    distance = metric.length(g)
    return CocycleVector(
        g=layers[0].g,
        distance=float(distance),
        truncation=N,
        layers=layers,
        layer_norms=[layer_norm(layer) for layer in layers],
        tail=tail_bound(distance, cert, N)
    )


# ============================================================================
# Affine action
# ============================================================================

class AffinePoint(BaseModel):
    """ξ in the truncated space: one finitely supported map per layer n = 1..N"""
    truncation: int
    layers: list[SparseVector]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @classmethod
    def zero(cls, truncation: int) -> "AffinePoint":
        return cls(truncation=truncation, layers=[{} for _ in range(truncation)])

    @classmethod
    def from_vector(cls, vector: CocycleVector) -> "AffinePoint":
        return cls(truncation=vector.truncation, layers=[dict(layer.values) for layer in vector.layers])

    def norm(self) -> float:
        return math.sqrt(sum(sparse_norm(layer, n) ** 2 for n, layer in enumerate(self.layers, start=1)))

    def distance_to(self, other: "AffinePoint") -> float:
        if other.truncation != self.truncation:
            raise TruncationMismatch(
                "Points live in different truncations",
                details={"left": self.truncation, "right": other.truncation}
            )
        return math.sqrt(sum(
            sparse_norm(_sub(a, b), n) ** 2
            for n, (a, b) in enumerate(zip(self.layers, other.layers), start=1)
        ))


def affine_apply(
    g: GroupElement,
    xi: AffinePoint,
    metric: WordMetric,
    truncation: int | None = None
) -> AffinePoint:
    """α(g)ξ = λ(g)ξ + b(g), layer by layer"""
    N = truncation if truncation is not None else get_settings().DEFAULT_TRUNCATION
    if xi.truncation != N:
        raise TruncationMismatch(
            "Point truncation does not match the requested truncation",
            details={"point": xi.truncation, "requested": N}
        )
    layers = [
        _add(translate(xi.layers[n - 1], g, metric), cocycle_layer(n, g, metric).values)
        for n in range(1, N + 1)
    ]
    return AffinePoint(truncation=N, layers=layers)


# ============================================================================
# Verification
# ============================================================================

def _max_deviation(a: Mapping[Any, Any], b: Mapping[Any, Any]) -> float:
    return max((abs(float(v)) for v in _sub(a, b).values()), default=0.0)


def verify_cocycle_identity(
    metric: WordMetric,
    elements: Sequence[GroupElement],
    layers: Sequence[int],
    xi: AffinePoint | None = None,
    tolerance: float | None = None
) -> ValidationReport:
    """
    Check bⁿ(st) = λ(s)bⁿ(t) + bⁿ(s) and ‖λ(s)bⁿ(t)‖ = ‖bⁿ(t)‖ for all sampled s, t

    When `xi` is given (its truncation must cover max(layers)), also checks the
    action law α(st)ξ = α(s)(α(t)ξ).

    Returns:
        ValidationReport with checks "cocycle_identity", "linear_isometry" and,
        with xi, "affine_homomorphism"
    """
    tol = tolerance if tolerance is not None else get_settings().IDENTITY_TOLERANCE
    group = metric.group
    elements = [group.canonicalize(g) for g in elements]
    cache: dict[tuple[int, Any], CocycleLayer] = {}

    def layer(n, g):
        key = (n, g)
        if key not in cache:
            cache[key] = cocycle_layer(n, g, metric)
        return cache[key]

    identity_worst, identity_witness = 0.0, None
    isometry_worst, isometry_witness = 0.0, None
    for n in layers:
        for s in elements:
            for t in elements:
                moved = translate(layer(n, t).values, s, metric)
                deviation = _max_deviation(layer(n, group.mul(s, t)).values, _add(moved, layer(n, s).values))
                if deviation > identity_worst:
                    identity_worst = deviation
                    if deviation > tol:
                        identity_witness = f"n={n}, s={s!r}, t={t!r}"
                gap = abs(sparse_norm(moved, n) - layer_norm(layer(n, t)))
                if gap > isometry_worst:
                    isometry_worst = gap
                    if gap > tol:
                        isometry_witness = f"n={n}, s={s!r}, t={t!r}"

    checks = [
        AxiomCheck(
            name="cocycle_identity", passed=identity_witness is None,
            worst_violation=identity_worst, witness=identity_witness, tolerance=tol
        ),
        AxiomCheck(
            name="linear_isometry", passed=isometry_witness is None,
            worst_violation=isometry_worst, witness=isometry_witness, tolerance=tol
        ),
    ]

    if xi is not None:
        N = xi.truncation
        worst, witness = 0.0, None
        for s in elements:
            for t in elements:
                direct = affine_apply(group.mul(s, t), xi, metric, N)
                composed = affine_apply(s, affine_apply(t, xi, metric, N), metric, N)
                deviation = max(_max_deviation(a, b) for a, b in zip(direct.layers, composed.layers))
                if deviation > worst:
                    worst = deviation
                    if deviation > tol:
                        witness = f"s={s!r}, t={t!r}"
        checks.append(AxiomCheck(
            name="affine_homomorphism", passed=witness is None,
            worst_violation=worst, witness=witness, tolerance=tol
        ))

    report = ValidationReport(subject=f"cocycle[{metric.gens.name}]", sample_size=len(elements), checks=checks)
    logger.info(f"Cocycle identity on {len(elements)} elements, layers {list(layers)}: passed={report.passed}")
    return report


class NormGrowthRow(BaseModel):
    """‖b(g)‖ against the N(g)/4 lower bound at one radius"""
    distance: float
    element: str
    n_g: int | None
    squared_lower_bound: float | None
    norm: float
    norm_plus_tail: float
    orbit_norm: float
    lower_passed: bool
    orbit_passed: bool
    disjoint_support_passed: bool

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def norm_lower(self) -> float | None:
        """sqrt(N(g)/4), a lower bound of the full norm"""
        return None if self.squared_lower_bound is None else math.sqrt(self.squared_lower_bound)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.lower_passed and self.orbit_passed and self.disjoint_support_passed and (
            self.squared_lower_bound is None or self.norm_plus_tail ** 2 >= self.squared_lower_bound
        )


class PropernessReport(BaseModel):
    truncation: int
    rows: list[NormGrowthRow]

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def monotone(self) -> bool:
        bounds = [row.squared_lower_bound for row in self.rows if row.squared_lower_bound is not None]
        return all(a <= b for a, b in zip(bounds, bounds[1:]))

    @computed_field
    @property
    def passed(self) -> bool:
        return self.monotone and all(row.passed for row in self.rows)


def half_distance_index(distance: float) -> int | None:
    """The integer N(g) with d/2 - 1 <= N(g) < d/2; None when d <= 2"""
    if distance <= 2:
        return None
    return math.ceil(distance / 2) - 1


def _element_at(metric: WordMetric, radius: Any) -> GroupElement:
    for g in metric.ball(radius):
        if metric.length(g) == radius:
            return g
    raise DomainError("No element at this distance", details={"radius": radius})


def properness_report(
    metric: WordMetric,
    truncation: int,
    grid: Sequence[Any],
    certificate: GrowthCertificate | None = None,
    xi: AffinePoint | None = None
) -> PropernessReport:
    """
    ‖b(g)‖ along an increasing radius grid

    For each radius the first element of that length (in ball order) is used.
    Each row checks that the certified norm range is consistent with the N(g)/4
    lower bound, that ‖α(g)ξ‖ >= ‖b(g)‖ - ‖ξ‖, and that layers with d > 2n
    have power sum exactly twice the bump's.
    """
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise DomainError("Radius grid must be increasing", details={"grid": list(grid)})
    tol = get_settings().FLOAT_TOLERANCE
    cert = _certificate(metric, truncation, certificate)
    if xi is None:
        xi = AffinePoint.from_vector(cocycle_vector(metric.group.generators()[0], metric, truncation, cert))
    xi_norm = xi.norm()
    power_sums = {n: bump_power_sum(n, metric) for n in range(1, truncation + 1)}

    rows = []
    for radius in grid:
        g = _element_at(metric, radius)
        vector = cocycle_vector(g, metric, truncation, cert)
        n_g = half_distance_index(vector.distance)
        orbit_norm = affine_apply(g, xi, metric, truncation).norm()
        disjoint = all(
            layer_power_sum(layer) == 2 * power_sums[layer.n]
            for layer in vector.layers if vector.distance > 2 * layer.n
        )
        rows.append(NormGrowthRow(
            distance=vector.distance,
            element=repr(g),
            n_g=n_g,
            squared_lower_bound=None if n_g is None else n_g / 4,
            norm=vector.norm,
            norm_plus_tail=vector.norm_plus_tail,
            orbit_norm=orbit_norm,
            lower_passed=n_g is None or vector.norm ** 2 >= min(n_g, truncation) / 4 - tol,
            orbit_passed=orbit_norm >= vector.norm - xi_norm - tol,
            disjoint_support_passed=disjoint
        ))
    report = PropernessReport(truncation=truncation, rows=rows)
    logger.info(f"Properness over grid {list(grid)}: passed={report.passed}")
    return report


class EmbeddingConstants(BaseModel):
    """c1·√d <= ‖b(g) - b(h)‖ <= c2·d for sampled pairs with d >= c3"""
    c1: float
    c2: float
    c3: float
    pairs_used: int
    min_distance: float
    max_distance: float
    translation_error: float
    translation_passed: bool
    truncation: int
    alpha: float
    beta: float

    model_config = ConfigDict(frozen=True)


def embedding_constants(
    metric: WordMetric,
    truncation: int,
    pairs: Sequence[tuple[GroupElement, GroupElement]],
    certificate: GrowthCertificate | None = None,
    tolerance: float | None = None
) -> EmbeddingConstants:
    """
    Sharpest c1 and c2 over the sampled pairs at separation c3 = 3

    Also checks ‖b(g) - b(h)‖ = ‖b(h^-1 g)‖ on every used pair.

    Raises:
        InsufficientRange: No pair is at distance >= c3
    """
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    cert = _certificate(metric, truncation, certificate)
    group = metric.group
    points: dict[Any, AffinePoint] = {}

    def point(g):
        if g not in points:
            points[g] = AffinePoint.from_vector(cocycle_vector(g, metric, truncation, cert))
        return points[g]

    c1, c2 = math.inf, 0.0
    distances, translation_error = [], 0.0
    for g, h in pairs:
        d = float(metric.distance(g, h))
        if d < SANDWICH_THRESHOLD:
            continue
        difference = point(g).distance_to(point(h))
        translated = point(group.mul(group.inv(h), g)).norm()
        translation_error = max(translation_error, abs(difference - translated))
        c1 = min(c1, difference / math.sqrt(d))
        c2 = max(c2, difference / d)
        distances.append(d)

    if not distances:
        raise InsufficientRange(
            "No sampled pair is far enough apart",
            details={"c3": SANDWICH_THRESHOLD, "pairs": len(pairs)}
        )
    constants = EmbeddingConstants(
        c1=c1, c2=c2, c3=SANDWICH_THRESHOLD,
        pairs_used=len(distances),
        min_distance=min(distances), max_distance=max(distances),
        translation_error=translation_error,
        translation_passed=translation_error <= tol,
        truncation=truncation,
        alpha=cert.alpha, beta=cert.beta
    )
    logger.info(f"Embedding constants c1={c1:.6g}, c2={c2:.6g} over {len(distances)} pairs")
    return constants
