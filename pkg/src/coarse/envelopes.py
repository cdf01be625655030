import itertools
from collections.abc import Callable, Sequence
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field

from src.config.settings import get_settings
from src.core.exceptions import EmptySample
from src.core.length import MetricView
from src.core.logger import LoggerFactory

logger = LoggerFactory.create_logger("Envelopes", level=get_settings().LOG_LEVEL)

SAMPLE_SCOPE = "supported on sampled range only"


class ExpansivenessEnvelope(BaseModel):
    """Step function S with d_X <= R implying d_Y <= S(R) on the sampled pairs"""
    grid: list[float]
    upper: list[float]
    pairs: int

    model_config = ConfigDict(frozen=True)

    def S(self, R: float) -> float:
        value = 0.0
        for t, s in zip(self.grid, self.upper):
            if t > R:
                break
            value = s
        return value

    @computed_field
    @property
    def finite(self) -> bool:
        return all(np.isfinite(self.upper))


class EmbeddingEnvelope(BaseModel):
    """Empirical control functions rho_- <= d_Y(f x, f y) <= rho_+ over the grid of d_X"""
    grid: list[float]
    rho_minus: list[float]
    rho_plus: list[float]
    pairs: int
    verdict: Literal["PASS", "FAIL"]
    scope: str = SAMPLE_SCOPE

    model_config = ConfigDict(frozen=True)

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.grid, self.rho_minus, self.rho_plus))


class CoarseEquivalenceReport(BaseModel):
    """Both directions of the identity map between two metrics on one sample"""
    forward: ExpansivenessEnvelope
    backward: ExpansivenessEnvelope
    verdict: Literal["PASS", "FAIL"]
    scope: str = SAMPLE_SCOPE

    model_config = ConfigDict(frozen=True)


def _distance_pairs(
    f: Callable[[Any], Any],
    source: Callable[[Any, Any], Any],
    target: Callable[[Any, Any], Any],
    pairs: Sequence[tuple[Any, Any]]
) -> list[tuple[float, float]]:
    if not pairs:
        raise EmptySample("No sample pairs")
    images: dict[Any, Any] = {}

    def image(x):
        if x not in images:
            images[x] = f(x)
        return images[x]

    return [(float(source(x, y)), float(target(image(x), image(y)))) for x, y in pairs]


def expansiveness_envelope(
    f: Callable[[Any], Any],
    source: Callable[[Any, Any], Any],
    target: Callable[[Any, Any], Any],
    pairs: Sequence[tuple[Any, Any]]
) -> ExpansivenessEnvelope:
    """S(R) = max d_Y(f x, f y) over sampled pairs with d_X(x, y) <= R"""
    values = sorted(_distance_pairs(f, source, target, pairs))
    grid, upper = [], []
    running = 0.0
    for dx, group in itertools.groupby(values, key=lambda item: item[0]):
        running = max(running, max(dy for _, dy in group))
        grid.append(dx)
        upper.append(running)
    return ExpansivenessEnvelope(grid=grid, upper=upper, pairs=len(values))


def verify_uniform_embedding(
    f: Callable[[Any], Any],
    source: Callable[[Any, Any], Any],
    target: Callable[[Any, Any], Any],
    pairs: Sequence[tuple[Any, Any]]
) -> EmbeddingEnvelope:
    """
    rho_+(t) = max{d_Y : d_X <= t}, rho_-(t) = min{d_Y : d_X >= t} over the d_X grid

    PASS when rho_+ is finite and rho_- keeps growing across the top half of the
    grid (its last value exceeds its value at the grid midpoint). The verdict
    only speaks for the sampled range.
    """
    values = sorted(_distance_pairs(f, source, target, pairs))
    grid = sorted({dx for dx, _ in values})

    by_distance: dict[float, list[float]] = {}
    for dx, dy in values:
        by_distance.setdefault(dx, []).append(dy)
    maxima = [max(by_distance[t]) for t in grid]
    minima = [min(by_distance[t]) for t in grid]

    rho_plus = list(itertools.accumulate(maxima, max))
    rho_minus = list(itertools.accumulate(reversed(minima), min))[::-1]

    growing = len(grid) >= 2 and rho_minus[-1] > rho_minus[(len(grid) - 1) // 2]
    finite = all(np.isfinite(rho_plus))
    verdict: Literal["PASS", "FAIL"] = "PASS" if growing and finite else "FAIL"
    logger.info(f"Uniform embedding over {len(values)} pairs: {verdict} ({SAMPLE_SCOPE})")
    return EmbeddingEnvelope(
        grid=grid, rho_minus=rho_minus, rho_plus=rho_plus, pairs=len(values), verdict=verdict
    )


def sample_pairs(
    sample: Sequence[Any],
    max_pairs: int | None = None,
    seed: int = 0
) -> list[tuple[Any, Any]]:
    """Unordered distinct pairs, or a seeded subsample of max_pairs of them"""
    pairs = list(itertools.combinations(sample, 2))
    if max_pairs is None or len(pairs) <= max_pairs:
        return pairs
    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(len(pairs), size=max_pairs, replace=False).tolist())
    return [pairs[i] for i in chosen]


def plig_coarse_equivalence_probe(
    d1: MetricView,
    d2: MetricView,
    sample: Sequence[Any],
    max_pairs: int | None = None,
    seed: int = 0
) -> CoarseEquivalenceReport:
    """
    Uniform expansiveness of the identity in both directions on a sample

    PASS when both envelopes are finite over the sampled grid.
    """
    pairs = sample_pairs(sample, max_pairs=max_pairs, seed=seed)
    if not pairs:
        raise EmptySample("Coarse equivalence probe needs at least two points")

    def identity(x):
        return x

    forward = expansiveness_envelope(identity, d1, d2, pairs)
    backward = expansiveness_envelope(identity, d2, d1, pairs)
    verdict: Literal["PASS", "FAIL"] = "PASS" if forward.finite and backward.finite else "FAIL"
    logger.info(f"Coarse equivalence {d1.name} vs {d2.name}: {verdict} on {len(pairs)} pairs")
    return CoarseEquivalenceReport(forward=forward, backward=backward, verdict=verdict)
