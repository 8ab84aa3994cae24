"""시스템 추정기 인터페이스."""
from abc import ABC, abstractmethod

import numpy as np

from ..entities.fit_result import FitResult, EstimationMethod
from ..entities.lti_system import Trajectory


class SystemEstimator(ABC):
    """
    궤적으로부터 이산 1스텝 사상 (Â, B̂) 를 추정하는 포트.

    헥사고날 아키텍처의 포트 - 어떤 회귀를 쓰는지는 명시하지 않고
    도메인이 추정기에 요구하는 것만 정의합니다.
    """

    @property
    @abstractmethod
    def method(self) -> EstimationMethod:
        """결과에 기록할 추정 방법."""
        pass

    @abstractmethod
    def fit(self, trajectory: Trajectory, inputs: np.ndarray) -> FitResult:
        """
        X₁ ≈ [Â B̂]·[X₀; U₀] 를 풉니다.

        Args:
            trajectory: 상태 궤적 x[0..T], (T+1)×n
            inputs: 입력 시퀀스 u[0..T−1], T×m

        Returns:
            추정 결과

        Raises:
            InvalidInputError: 스냅샷 쌍이 1개 미만인 경우
            DimensionMismatchError: 입력 길이가 궤적과 맞지 않는 경우
            EstimationError: 최소제곱 풀이가 실패한 경우
        """
        pass
