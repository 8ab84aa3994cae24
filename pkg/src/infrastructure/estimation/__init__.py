"""시스템 추정기 어댑터."""
from .dmdc import DmdcEstimator
from .stlsq import StlsqEstimator

# moesp는 DMDc 최소제곱 해로 귀결되므로 DmdcEstimator로 처리됩니다
ESTIMATOR_METHODS = ("dmdc", "stlsq", "moesp")

__all__ = ["DmdcEstimator", "StlsqEstimator", "ESTIMATOR_METHODS"]
