from src.coarse.envelopes import (
    CoarseEquivalenceReport,
    EmbeddingEnvelope,
    ExpansivenessEnvelope,
    expansiveness_envelope,
    plig_coarse_equivalence_probe,
    sample_pairs,
    verify_uniform_embedding,
)
from src.coarse.fixtures import DisjointCloudSpace
from src.coarse.lattice import (
    CoarseLattice,
    GeometryCensus,
    bounded_geometry_census,
    build_coarse_lattice,
    retract_to_lattice,
)

__all__ = [
    "CoarseEquivalenceReport",
    "CoarseLattice",
    "DisjointCloudSpace",
    "EmbeddingEnvelope",
    "ExpansivenessEnvelope",
    "GeometryCensus",
    "bounded_geometry_census",
    "build_coarse_lattice",
    "expansiveness_envelope",
    "plig_coarse_equivalence_probe",
    "retract_to_lattice",
    "sample_pairs",
    "verify_uniform_embedding",
]
