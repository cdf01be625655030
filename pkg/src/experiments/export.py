import csv
import json
import numbers
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from src.cocycle.embedding import PropernessReport
from src.coarse.envelopes import EmbeddingEnvelope
from src.core.model import BallCensus, GrowthCertificate

ENVELOPE_FIELDS = ["t", "rho_minus", "rho_plus"]
EMBEDDING_FIELDS = ["d", "norm_lower", "norm", "norm_plus_tail"]
CENSUS_FIELDS = ["n", "ball_size", "sphere_size", "bound_3n", "pass"]


def _cell(value: Any) -> Any:
    """Full precision: repr for floats, exact ints, fractions as floats"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        return repr(float(value))
    return str(value)


def write_csv(path: Path, fieldnames: list[str], rows: Iterable[Mapping[str, Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row.get(key)) for key in fieldnames})
    return path


def write_json(path: Path, payload: BaseModel | Mapping[str, Any]) -> Path:
    """Sorted keys and a trailing newline so reruns are byte-identical"""
    data = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else payload
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return path


def census_rows(census: BallCensus, certificate: GrowthCertificate, graded: bool) -> list[dict[str, Any]]:
    """
    One row per radius. Graded schemes are checked against 3^n; other schemes
    leave bound_3n empty and check the growth certificate instead.
    """
    rows = []
    for n in census.radii:
        size = census.ball_size(n)
        bound = 3 ** n if graded else None
        rows.append({
            "n": n,
            "ball_size": size,
            "sphere_size": census.sphere_size(n),
            "bound_3n": bound,
            "pass": size <= bound if graded else size <= certificate.bound(n) * (1 + 1e-9),
        })
    return rows


def envelope_rows(envelope: EmbeddingEnvelope) -> list[dict[str, Any]]:
    return [
        {"t": t, "rho_minus": lower, "rho_plus": upper}
        for t, lower, upper in envelope.rows()
    ]


def embedding_rows(report: PropernessReport) -> list[dict[str, Any]]:
    return [
        {
            "d": row.distance,
            "norm_lower": row.norm_lower,
            "norm": row.norm,
            "norm_plus_tail": row.norm_plus_tail,
        }
        for row in report.rows
    ]
