import itertools
import json
import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field

from src.config.settings import get_settings
from src.core.exceptions import ConfigError, NonFinite
from src.core.length import LengthFunction, MetricView
from src.core.logger import LoggerFactory
from src.core.model import BoundReport, BoundRow
from src.groups.matrix import GeneralLinearGroup, SquareMatrix

logger = LoggerFactory.create_logger("MatrixMetric", level=get_settings().LOG_LEVEL)


def _entries(A: SquareMatrix | np.ndarray) -> np.ndarray:
    array = A.entries if isinstance(A, SquareMatrix) else np.asarray(A, dtype=float)
    if not np.all(np.isfinite(array)):
        raise NonFinite("Matrix has non-finite entries")
    return array


def operator_norm(A: SquareMatrix | np.ndarray) -> float:
    """sup{||Ax|| : ||x|| <= 1}, the largest singular value"""
    return float(np.linalg.norm(_entries(A), 2))


def gl_length(A: SquareMatrix) -> float:
    """l(A) = max{ln(1 + ||A - I||), ln(1 + ||A^-1 - I||)}"""
    identity = np.eye(A.dimension)
    forward = math.log1p(operator_norm(A.entries - identity))
    backward = math.log1p(operator_norm(A.inverse.entries - identity))
    return max(forward, backward)


def gl_metric(A: SquareMatrix, B: SquareMatrix) -> float:
    """d(A, B) = l(B^-1 A)"""
    return gl_length(B.inverse @ A)


def gl_length_function(group: GeneralLinearGroup) -> LengthFunction:
    return LengthFunction(group=group, evaluator=gl_length, name=f"gl_length[{group.dimension}]", source="gl_length")


def gl_metric_view(group: GeneralLinearGroup) -> MetricView:
    return MetricView(evaluator=gl_metric, name=f"gl_metric[{group.dimension}]", group=group, source="gl_metric")


# ============================================================================
# Samplers
# ============================================================================

def random_gl_samples(dimension: int, count: int, seed: int) -> list[SquareMatrix]:
    """Seeded well-conditioned GL(n) samples"""
    rng = np.random.default_rng(seed)
    group = GeneralLinearGroup(dimension)
    return [group.random_element(rng) for _ in range(count)]


def random_sl2_words(count: int, max_length: int, seed: int) -> list[SquareMatrix]:
    """Products of at most max_length unipotent generators of SL(2, R) and their inverses"""
    rng = np.random.default_rng(seed)
    letters = [
        SquareMatrix([[1.0, 1.0], [0.0, 1.0]]),
        SquareMatrix([[1.0, -1.0], [0.0, 1.0]]),
        SquareMatrix([[1.0, 0.0], [1.0, 1.0]]),
        SquareMatrix([[1.0, 0.0], [-1.0, 1.0]]),
    ]
    samples = []
    for _ in range(count):
        product = SquareMatrix(np.eye(2))
        for index in rng.integers(0, len(letters), int(rng.integers(0, max_length + 1))):
            product = product @ letters[int(index)]
        samples.append(product)
    return samples


def load_matrix_samples(path: str | Path) -> list[SquareMatrix]:
    """Read a JSON list of row-major arrays"""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError("Cannot read matrix samples", details={"path": str(path), "error": str(e)}) from e
    if not isinstance(raw, list) or not raw:
        raise ConfigError("Matrix sample file must hold a non-empty list", details={"path": str(path)})
    return [SquareMatrix(entries) for entries in raw]


# ============================================================================
# Probes
# ============================================================================

class ProperRow(BaseModel):
    """One sample inside the sublevel set l(A) <= r"""
    length: float
    norm: float
    inverse_norm: float
    passed: bool

    model_config = ConfigDict(frozen=True)


class ProperReport(BaseModel):
    """Sublevel set {l <= r} lies in K = {||A|| <= e^r, ||A^-1|| <= e^r}"""
    radius: float
    bound: float
    sampled: int
    rows: list[ProperRow]

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def inside(self) -> int:
        return len(self.rows)

    @computed_field
    @property
    def violations(self) -> int:
        return sum(1 for row in self.rows if not row.passed)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.violations == 0


def properness_probe(r: float, samples: Sequence[SquareMatrix], tolerance: float | None = None) -> ProperReport:
    """For every sample with l(A) <= r, check ||A|| <= e^r and ||A^-1|| <= e^r"""
    if r <= 0:
        raise ConfigError("Probe radius must be positive", details={"r": r})
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    bound = math.exp(r)
    rows = []
    for A in samples:
        length = gl_length(A)
        if length > r:
            continue
        norm, inverse_norm = operator_norm(A), operator_norm(A.inverse)
        rows.append(ProperRow(
            length=length, norm=norm, inverse_norm=inverse_norm,
            passed=norm <= bound * (1 + tol) and inverse_norm <= bound * (1 + tol)
        ))
    report = ProperReport(radius=r, bound=bound, sampled=len(samples), rows=rows)
    logger.debug(f"Properness probe r={r}: {report.inside}/{len(samples)} inside, {report.violations} violations")
    return report


def verify_norm_domination(samples: Sequence[SquareMatrix], tolerance: float | None = None) -> BoundReport:
    """||A|| <= 1 + ||A - I|| <= e^l(A) for each sample (row n = sample index)"""
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    rows = []
    for index, A in enumerate(samples):
        norm = operator_norm(A)
        middle = 1.0 + operator_norm(A.entries - np.eye(A.dimension))
        top = math.exp(gl_length(A))
        rows.append(BoundRow(
            n=index, value=norm, bound=top,
            passed=norm <= middle * (1 + tol) and middle <= top * (1 + tol)
        ))
    return BoundReport(name="norm_domination", rows=rows)


def verify_product_bound(samples: Sequence[SquareMatrix], tolerance: float | None = None) -> BoundReport:
    """ln(1 + ||AB - I||) <= l(A) + l(B) over all ordered pairs (row n = pair index)"""
    tol = tolerance if tolerance is not None else get_settings().FLOAT_TOLERANCE
    lengths = [gl_length(A) for A in samples]
    rows = []
    for index, ((i, A), (j, B)) in enumerate(itertools.product(enumerate(samples), repeat=2)):
        product = A.entries @ B.entries
        value = math.log1p(operator_norm(product - np.eye(A.dimension)))
        bound = lengths[i] + lengths[j]
        rows.append(BoundRow(n=index, value=value, bound=bound, passed=value <= bound + tol))
    return BoundReport(name="product_bound", rows=rows)
