from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.core.exceptions import ConfigError
from src.groups.factory import GroupSpec

ExperimentKind = Literal["growth", "embed", "lattice", "verify", "gl"]


class GeneratingSetSpec(BaseModel):
    """How to build the weighted generating set of a word metric"""
    scheme: Literal["standard", "graded", "explicit"] = "standard"
    weight: int = Field(default=1, gt=0)
    entries: list[tuple[Any, float]] | None = None
    symmetrize: bool = True
    max_index: int | None = Field(default=None, ge=1)

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def _explicit_needs_entries(self) -> "GeneratingSetSpec":
        if self.scheme == "explicit" and not self.entries:
            raise ValueError("explicit generating sets need entries")
        return self


class ExperimentConfig(BaseModel):
    """One experiment run: which group, which metric, which grids"""
    experiment: ExperimentKind
    group: GroupSpec = GroupSpec(kind="integer-lattice")
    generating_set: GeneratingSetSpec = GeneratingSetSpec()

    # Grids
    radius: int = Field(default=8, ge=1)
    grid: list[float] | None = None
    census_radii: list[float] = Field(default_factory=lambda: [1.0, 2.0, 3.0])

    # Cocycle embedding
    truncation: int | None = Field(default=None, ge=1)
    identity_radius: int = Field(default=2, ge=0)
    identity_layers: list[int] = Field(default_factory=lambda: [1, 2, 3, 4])

    # Coarse lattices
    separation: float = Field(default=1.0, gt=0)
    lattice_metric: Literal["word", "euclidean"] = "word"
    clouds: list[int] | None = None

    # GL(n) suite
    samples: int = Field(default=200, ge=2)
    sample_file: str | None = None
    max_triples: int = Field(default=20_000, ge=1)
    properness_radius: float = Field(default=2.0, gt=0)

    # Verification
    suites: list[str] | None = None

    # Sampling
    max_pairs: int = Field(default=2_000, ge=1)
    seed: int | None = None

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def _grid_increasing(self) -> "ExperimentConfig":
        if self.grid is not None and any(a >= b for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        return self


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a JSON experiment file"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("Cannot read experiment config", details={"path": str(path), "error": str(exc)}) from exc
    return parse_config(text, source=str(path))


def parse_config(text: str, source: str = "<string>") -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate_json(text)
    except ValidationError as exc:
        raise ConfigError(
            "Invalid experiment config",
            details={"source": source, "errors": exc.errors(include_url=False, include_context=False)}
        ) from exc
