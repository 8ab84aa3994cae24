"""Application use cases."""
from .analyze_visibility import AnalyzeVisibilityUseCase
from .compute_margins import ComputeMarginsUseCase
from .fit_system import FitSystemUseCase
from .run_experiment import RunExperimentUseCase
from .sample_consistent_set import SampleConsistentSetUseCase, ConsistentSample

__all__ = [
    "AnalyzeVisibilityUseCase",
    "ComputeMarginsUseCase",
    "FitSystemUseCase",
    "RunExperimentUseCase",
    "SampleConsistentSetUseCase",
    "ConsistentSample",
]
