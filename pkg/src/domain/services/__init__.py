"""도메인 서비스 모듈."""
from .dynamics import LtiDynamics
from .visibility import VisibilityAnalyzer
from .identifiability import IdentifiabilityTester
from .consistent_set import ConsistentSetBuilder
from .recovery_metrics import RecoveryMetrics

__all__ = [
    'LtiDynamics',
    'VisibilityAnalyzer',
    'IdentifiabilityTester',
    'ConsistentSetBuilder',
    'RecoveryMetrics',
]
