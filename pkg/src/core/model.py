import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, computed_field


# ============================================================================
# Validation Reports
# ============================================================================

class AxiomCheck(BaseModel):
    """Outcome of one axiom or law checked over a sample"""
    name: str
    passed: bool
    worst_violation: float = 0.0
    witness: str | None = None
    tolerance: float | None = None  # None means exact comparison

    model_config = ConfigDict(frozen=True)


class ValidationReport(BaseModel):
    """Per-axiom verdicts over a finite sample"""
    subject: str
    sample_size: int
    checks: list[AxiomCheck]

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_names(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def check(self, name: str) -> AxiomCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)


class BoundRow(BaseModel):
    """One grid point of a quantitative bound: value <= bound"""
    n: float
    value: float
    bound: float
    passed: bool

    model_config = ConfigDict(frozen=True)


class BoundReport(BaseModel):
    """A bound checked across a grid"""
    name: str
    rows: list[BoundRow]
    note: str | None = None

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


# ============================================================================
# Growth Models
# ============================================================================

class BallCensus(BaseModel):
    """Closed balls D(e,n) and spheres at integer radii n = 0..N"""
    radii: list[int]
    ball_sizes: list[int]
    sphere_sizes: list[int]
    distances: dict[Any, Any] = Field(default_factory=dict, exclude=True, repr=False)

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def max_radius(self) -> int:
        return self.radii[-1]

    def ball_size(self, n: int) -> int:
        return self.ball_sizes[self.radii.index(n)]

    def sphere_size(self, n: int) -> int:
        return self.sphere_sizes[self.radii.index(n)]

    def ball(self, n: float) -> frozenset:
        return frozenset(g for g, dist in self.distances.items() if dist <= n)

    def sphere(self, n: int) -> frozenset:
        return frozenset(g for g, dist in self.distances.items() if dist == n)


class GrowthCertificate(BaseModel):
    """Envelope |D(e,n)| <= beta * exp(alpha * n) on the grid n = 1..N"""
    alpha: float = Field(ge=0)
    beta: float = Field(ge=1)
    grid_bound: int = Field(ge=0)
    rate_estimate: float | None = None

    model_config = ConfigDict(frozen=True)

    def bound(self, n: float) -> float:
        return self.beta * math.exp(self.alpha * n)

    def holds(self, census: BallCensus, slack: float = 1e-9) -> bool:
        return all(
            size <= self.bound(n) * (1 + slack)
            for n, size in zip(census.radii, census.ball_sizes)
            if 1 <= n <= self.grid_bound
        )


# ============================================================================
# Covering Models
# ============================================================================

class CoverEntry(BaseModel):
    """Greedy cover of U·x_i by left translates y_ij·U"""
    index: int
    covering_number: int
    centers: list[Any]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class CoveringReport(BaseModel):
    """Covering numbers p(i) and, when computed, q for U²"""
    entries: list[CoverEntry]
    square_covering_number: int | None = None
    square_centers: list[Any] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def covering_number(self, index: int) -> int:
        for entry in self.entries:
            if entry.index == index:
                return entry.covering_number
        raise KeyError(index)
