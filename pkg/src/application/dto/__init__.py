"""애플리케이션 레이어 DTO."""
from .run_config import RunConfig, ExperimentId, Simulator, EXPERIMENT_DEFAULTS
from .result_row import ResultRow

__all__ = ["RunConfig", "ExperimentId", "Simulator", "EXPERIMENT_DEFAULTS", "ResultRow"]
