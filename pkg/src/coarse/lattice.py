from collections.abc import Callable, Sequence
from typing import Any

from pydantic import BaseModel, ConfigDict, computed_field

from src.config.settings import get_settings
from src.core.exceptions import DomainError, EmptyInput, OutOfRange
from src.core.length import MetricView
from src.core.logger import LoggerFactory

logger = LoggerFactory.create_logger("CoarseLattice", level=get_settings().LOG_LEVEL)


class CoarseLattice(BaseModel):
    """
    Separated net X = {x_1, x_2, ...} in a metric space, in insertion order

    The cell of x_n is A_n = B(x_n, separation) minus the earlier cells, so the
    retraction sends y to the first lattice point strictly within `separation`.
    """
    points: list[Any]
    separation: float
    covering_radius: float
    input_size: int
    metric: MetricView
    ball_volume: Callable[[float], int] | None = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def min_pairwise_distance(self) -> float:
        return min(
            (self.metric(a, b) for i, a in enumerate(self.points) for b in self.points[i + 1:]),
            default=float("inf")
        )


def build_coarse_lattice(
    points: Sequence[Any],
    metric: MetricView,
    separation: float,
    ball_volume: Callable[[float], int] | None = None
) -> CoarseLattice:
    """
    Greedy maximal separation-separated subset, scanning `points` in order

    Maximality over the input means every input point lies strictly within
    `separation` of the lattice, so the covering radius is at most `separation`.

    Args:
        points: Host points
        metric: Host metric
        separation: Minimum distance between lattice points
        ball_volume: r -> |B(e, r)| (open ball, counting measure) when the
            host is a group; enables the volume ratio bound in censuses
    """
    if not separation > 0:
        raise DomainError("Separation must be positive", details={"separation": separation})
    if not points:
        raise EmptyInput("Cannot build a lattice from no points")

    lattice: list[Any] = []
    for p in points:
        if all(metric(p, q) >= separation for q in lattice):
            lattice.append(p)

    covering = max(min(metric(p, q) for q in lattice) for p in points)
    logger.info(
        f"Lattice of {len(lattice)}/{len(points)} points, separation {separation}, covering radius {covering}"
    )
    return CoarseLattice(
        points=lattice,
        separation=float(separation),
        covering_radius=float(covering),
        input_size=len(points),
        metric=metric,
        ball_volume=ball_volume
    )


def retract_to_lattice(lattice: CoarseLattice, y: Any) -> Any:
    """Owner of the cell containing y: first lattice point x with d(x, y) < separation"""
    for x in lattice.points:
        if lattice.metric(x, y) < lattice.separation:
            return x
    raise OutOfRange(
        "Point lies in no lattice cell",
        details={"point": repr(y), "separation": lattice.separation}
    )


class GeometryCensus(BaseModel):
    """Γ_M = max_q |D(q, M)| over lattice points, with the volume ratio bound"""
    M: float
    gamma: int
    ratio_bound: float | None = None

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.ratio_bound is None or self.gamma <= self.ratio_bound


def bounded_geometry_census(lattice: CoarseLattice, M: float) -> GeometryCensus:
    """
    Largest closed M-ball count among lattice points

    With a group host and counting measure, also reports
    |B(e, M + 1/2)| / |B(e, 1/2)|, which bounds Γ_M for 1-separated lattices.
    """
    gamma = max(
        sum(1 for p in lattice.points if lattice.metric(q, p) <= M)
        for q in lattice.points
    )
    ratio = None
    if lattice.ball_volume is not None:
        half = lattice.separation / 2
        ratio = lattice.ball_volume(M + half) / lattice.ball_volume(half)
    census = GeometryCensus(M=M, gamma=gamma, ratio_bound=ratio)
    logger.debug(f"Γ_{M} = {gamma}, ratio bound {ratio}")
    return census
