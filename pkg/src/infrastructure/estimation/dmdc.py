"""DMDc 최소제곱 추정기 구현."""
import logging

import numpy as np

from ...domain.entities.fit_result import FitResult, EstimationMethod
from ...domain.entities.lti_system import Trajectory
from ...domain.exceptions import EstimationError
from ...domain.repositories.estimator import SystemEstimator
from .snapshots import snapshot_matrices

logger = logging.getLogger(__name__)


class DmdcEstimator(SystemEstimator):
    """
    SystemEstimator의 DMDc 구현.

    회귀자 [X₀; U₀] 가 행 계수 부족이면 유사역행렬의 최소 노름 해를 반환합니다.
    이 해는 잡음 없는 데이터에서 실험 일관 집합에 속합니다.
    MOESP도 같은 최소제곱 해로 귀결되므로 이 어댑터로 처리합니다.
    """

    def __init__(self, rcond: float = 1e-10):
        """
        Args:
            rcond: 유사역행렬 특이값 절단 비율 (σ_max 기준)
        """
        self.rcond = rcond

    @property
    def method(self) -> EstimationMethod:
        return EstimationMethod.DMDC

    def fit(self, trajectory: Trajectory, inputs: np.ndarray) -> FitResult:
        x0_snap, x1_snap, u_snap = snapshot_matrices(trajectory, inputs)
        regressor = np.vstack([x0_snap, u_snap])

        try:
            coefficients = x1_snap @ np.linalg.pinv(regressor, rcond=self.rcond)
        except np.linalg.LinAlgError as e:
            logger.error(f"DMDc 최소제곱 실패: {e}")
            raise EstimationError(f"DMDc 최소제곱 실패: {str(e)}", original_error=e)

        n = trajectory.n
        residual = float(np.linalg.norm(x1_snap - coefficients @ regressor))
        logger.debug(f"DMDc 추정 완료: n={n}, T={x0_snap.shape[1]}, 잔차={residual:.3e}")

        return FitResult(
            ad_hat=coefficients[:, :n],
            bd_hat=coefficients[:, n:],
            residual=residual,
            method=self.method,
        )
