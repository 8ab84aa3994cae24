"""순차 임계 최소제곱(STLSQ) 추정기 구현."""
import logging

import numpy as np

from ...domain.entities.fit_result import FitResult, EstimationMethod
from ...domain.entities.lti_system import Trajectory
from ...domain.exceptions import EstimationError, InvalidInputError
from ...domain.repositories.estimator import SystemEstimator
from .snapshots import snapshot_matrices

logger = logging.getLogger(__name__)


class StlsqEstimator(SystemEstimator):
    """
    선형 라이브러리 [x; u] 위의 SINDy-STLSQ.

    [Â B̂] 전체 성분을 함께 임계 처리합니다. 한 번 0이 된 성분은
    이후 반복에서도 0으로 남습니다.
    """

    def __init__(self, threshold: float = 0.05, iterations: int = 8, rcond: float = 1e-10):
        if threshold < 0:
            raise InvalidInputError(f"threshold는 0 이상이어야 합니다: {threshold}")
        if iterations < 1:
            raise InvalidInputError(f"iterations는 1 이상이어야 합니다: {iterations}")
        self.threshold = threshold
        self.iterations = iterations
        self.rcond = rcond

    @property
    def method(self) -> EstimationMethod:
        return EstimationMethod.STLSQ

    def fit(self, trajectory: Trajectory, inputs: np.ndarray) -> FitResult:
        x0_snap, x1_snap, u_snap = snapshot_matrices(trajectory, inputs)
        regressor = np.vstack([x0_snap, u_snap])

        try:
            coefficients = x1_snap @ np.linalg.pinv(regressor, rcond=self.rcond)
            zeroed = np.zeros(coefficients.shape, dtype=bool)

            for _ in range(self.iterations):
                small = zeroed | (np.abs(coefficients) < self.threshold)
                if np.array_equal(small, zeroed):
                    break
                zeroed = small
                coefficients[zeroed] = 0.0

                # 행마다 활성 항으로만 재적합
                for row in range(coefficients.shape[0]):
                    active = ~zeroed[row]
                    if not active.any():
                        continue
                    coefficients[row, active] = x1_snap[row] @ np.linalg.pinv(
                        regressor[active], rcond=self.rcond
                    )
        except np.linalg.LinAlgError as e:
            logger.error(f"STLSQ 최소제곱 실패: {e}")
            raise EstimationError(f"STLSQ 최소제곱 실패: {str(e)}", original_error=e)

        n = trajectory.n
        residual = float(np.linalg.norm(x1_snap - coefficients @ regressor))
        logger.debug(
            f"STLSQ 추정 완료: λ={self.threshold}, 0 성분 {int(zeroed.sum())}개, 잔차={residual:.3e}"
        )

        return FitResult(
            ad_hat=coefficients[:, :n],
            bd_hat=coefficients[:, n:],
            residual=residual,
            method=self.method,
        )
