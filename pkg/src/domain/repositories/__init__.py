"""Domain repositories (interfaces)."""
from .estimator import SystemEstimator

__all__ = ["SystemEstimator"]
