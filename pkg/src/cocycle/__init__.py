from src.cocycle.embedding import (
    AffinePoint,
    CocycleLayer,
    CocycleVector,
    EmbeddingConstants,
    NormGrowthRow,
    PropernessReport,
    affine_apply,
    bump_power_sum,
    bump_value,
    cocycle_layer,
    cocycle_vector,
    embedding_constants,
    half_ball_lower_bound,
    half_distance_index,
    layer_norm,
    layer_power_sum,
    norm_upper_bound,
    properness_report,
    sparse_norm,
    tail_bound,
    translate,
    verify_bump_lipschitz,
    verify_cocycle_identity,
)

__all__ = [
    "AffinePoint",
    "CocycleLayer",
    "CocycleVector",
    "EmbeddingConstants",
    "NormGrowthRow",
    "PropernessReport",
    "affine_apply",
    "bump_power_sum",
    "bump_value",
    "cocycle_layer",
    "cocycle_vector",
    "embedding_constants",
    "half_ball_lower_bound",
    "half_distance_index",
    "layer_norm",
    "layer_power_sum",
    "norm_upper_bound",
    "properness_report",
    "sparse_norm",
    "tail_bound",
    "translate",
    "verify_bump_lipschitz",
    "verify_cocycle_identity",
]
