"""시스템 추정 결과 엔티티."""
from dataclasses import dataclass
from enum import Enum

import numpy as np


class EstimationMethod(str, Enum):
    """추정 방법. MOESP는 DMDc와 같은 최소제곱 해로 귀결되므로 별도 값이 없습니다."""

    DMDC = "dmdc"
    STLSQ = "stlsq"


@dataclass(frozen=True, eq=False)
class FitResult:
    """
    이산 1스텝 사상 추정치 (Â, B̂).

    residual은 ‖X₁ − [Â B̂][X₀; U₀]‖_F 입니다.
    """

    ad_hat: np.ndarray
    bd_hat: np.ndarray
    residual: float
    method: EstimationMethod

    @property
    def n(self) -> int:
        return self.ad_hat.shape[0]

    @property
    def m(self) -> int:
        return self.bd_hat.shape[1]

    @property
    def stacked(self) -> np.ndarray:
        """[Â B̂]."""
        return np.hstack([self.ad_hat, self.bd_hat])
