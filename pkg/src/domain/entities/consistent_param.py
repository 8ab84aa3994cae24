"""실험 일관 집합의 자유 파라미터."""
from dataclasses import dataclass

import numpy as np

from ..exceptions import DimensionMismatchError


@dataclass(frozen=True, eq=False)
class ConsistentParam:
    """
    (Θ, Ψ) 파라미터.

    theta: k×(n−k) 교차 블록, psi: (n−k)×(n−k) 은닉 블록.
    자유도는 n·(n−k) 입니다.
    """

    theta: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        theta = np.atleast_2d(np.array(self.theta, dtype=np.float64))
        psi = np.atleast_2d(np.array(self.psi, dtype=np.float64))
        hidden = psi.shape[0]
        if psi.shape != (hidden, hidden):
            raise DimensionMismatchError(f"psi는 정방행렬이어야 합니다 (현재 형태: {psi.shape})")
        if theta.shape[1] != hidden:
            raise DimensionMismatchError(
                f"theta 열 수가 psi 차원과 다릅니다: {theta.shape[1]} vs {hidden}"
            )
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "psi", psi)

    @property
    def visible_dim(self) -> int:
        return self.theta.shape[0]

    @property
    def hidden_dim(self) -> int:
        return self.psi.shape[0]

    @property
    def degrees_of_freedom(self) -> int:
        return self.theta.size + self.psi.size

    @classmethod
    def zeros(cls, k: int, n: int) -> "ConsistentParam":
        """Θ = 0, Ψ = 0 파라미터를 만듭니다."""
        return cls(theta=np.zeros((k, n - k)), psi=np.zeros((n - k, n - k)))
