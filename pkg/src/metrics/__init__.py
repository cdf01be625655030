from src.metrics.matrix import (
    ProperReport,
    ProperRow,
    gl_length,
    gl_length_function,
    gl_metric,
    gl_metric_view,
    load_matrix_samples,
    operator_norm,
    properness_probe,
    random_gl_samples,
    random_sl2_words,
    verify_norm_domination,
    verify_product_bound,
)
from src.metrics.regularized import (
    DeltaLengths,
    Factorization,
    InclusionReport,
    minimal_factorization,
    regularized_factorization,
    regularized_length,
    verify_ball_inclusion,
)
from src.metrics.search import SearchResult, uniform_cost_search
from src.metrics.two_level import (
    TwoLevelSpec,
    greedy_cover,
    starred_weights,
    tilde_length,
    two_level_ball,
    two_level_length,
    verify_starred_growth,
    verify_two_level_locality,
)
from src.metrics.word import (
    WeightedGeneratingSet,
    WordMetric,
    count_compositions,
    enumerate_ball,
    enumerate_compositions,
    growth_certificate,
    sphere_counts,
    verify_3n_bound,
    verify_sphere_bound,
    word_length,
)

__all__ = [
    "DeltaLengths",
    "Factorization",
    "InclusionReport",
    "ProperReport",
    "ProperRow",
    "SearchResult",
    "TwoLevelSpec",
    "WeightedGeneratingSet",
    "WordMetric",
    "count_compositions",
    "enumerate_ball",
    "enumerate_compositions",
    "gl_length",
    "gl_length_function",
    "gl_metric",
    "gl_metric_view",
    "greedy_cover",
    "growth_certificate",
    "load_matrix_samples",
    "minimal_factorization",
    "operator_norm",
    "properness_probe",
    "random_gl_samples",
    "random_sl2_words",
    "regularized_factorization",
    "regularized_length",
    "sphere_counts",
    "starred_weights",
    "tilde_length",
    "two_level_ball",
    "two_level_length",
    "uniform_cost_search",
    "verify_3n_bound",
    "verify_ball_inclusion",
    "verify_norm_domination",
    "verify_product_bound",
    "verify_sphere_bound",
    "verify_starred_growth",
    "verify_two_level_locality",
    "word_length",
]
