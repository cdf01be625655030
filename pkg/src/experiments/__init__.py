from src.experiments.config import ExperimentConfig, GeneratingSetSpec, load_config, parse_config
from src.experiments.runner import ExperimentRunner, RunResult, SuiteResult

__all__ = [
    "ExperimentConfig",
    "ExperimentRunner",
    "GeneratingSetSpec",
    "RunResult",
    "SuiteResult",
    "load_config",
    "parse_config",
]
