"""시스템 추정 유스케이스."""
import logging
from typing import Callable

from ...domain.entities.fit_result import FitResult
from ...domain.exceptions import InvalidConfigError
from ...domain.repositories.estimator import SystemEstimator
from ...infrastructure.estimation import ESTIMATOR_METHODS
from ...infrastructure.storage.system_storage import SystemFileStorage

logger = logging.getLogger(__name__)


class FitSystemUseCase:
    """
    궤적 CSV와 입력 CSV로 (Â, B̂) 를 추정하는 유스케이스.

    추정기는 방법 이름(dmdc, stlsq, moesp)으로 레지스트리에서 가져옵니다.
    """

    def __init__(self, storage: SystemFileStorage, estimator_factory: Callable[[str], SystemEstimator]):
        """
        Args:
            storage: 파일 입출력 어댑터
            estimator_factory: 방법 이름 → 추정기
        """
        self._storage = storage
        self._estimator_factory = estimator_factory

    def execute(self, method: str, trajectory_path: str, inputs_path: str) -> FitResult:
        """
        Raises:
            InvalidConfigError: 알 수 없는 방법인 경우
            ResourceNotFoundError: 파일이 없는 경우
            InvalidInputError: 스냅샷 쌍이 부족한 경우
        """
        trajectory = self._storage.load_trajectory(trajectory_path)
        inputs = self._storage.load_inputs(inputs_path)

        if method not in ESTIMATOR_METHODS:
            raise InvalidConfigError(f"알 수 없는 추정 방법입니다: {method} (가능: {', '.join(ESTIMATOR_METHODS)})")

        estimator = self._estimator_factory(method)
        fit = estimator.fit(trajectory, inputs)
        logger.info(f"{method} 추정 완료: n={fit.n}, m={fit.m}, 잔차={fit.residual:.3e}")
        return fit
