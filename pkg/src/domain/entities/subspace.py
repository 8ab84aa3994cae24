"""부분공간 및 (V, W) 블록 분해 엔티티."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Subspace:
    """
    가시 부분공간 V(x₀).

    basis는 정규직교 열을 갖는 n×k 행렬이며, singular_values는
    랭크 k를 결정한 특이값(내림차순)입니다.
    """

    basis: np.ndarray
    k: int
    singular_values: np.ndarray
    rtol: float

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def projector(self) -> np.ndarray:
        """직교 사영 P Pᵀ."""
        return self.basis @ self.basis.T

    @property
    def is_full(self) -> bool:
        return self.k == self.n

    def is_well_separated(self, margin: float = 100.0) -> bool:
        """
        랭크 결정이 임계값 근처가 아닌지 확인합니다.

        σ_k > margin·rtol·σ₁ 이고 σ_{k+1} < rtol·σ₁/margin 이어야 합니다.
        """
        if self.k == 0 or self.singular_values.size == 0:
            return False
        threshold = self.rtol * float(self.singular_values[0])
        if self.singular_values[self.k - 1] <= margin * threshold:
            return False
        return self.k == self.singular_values.size or self.singular_values[self.k] < threshold / margin


@dataclass(frozen=True, eq=False)
class BlockForm:
    """
    (V, W) 적응 좌표에서의 블록 형태.

    T⁻¹AT = [[A_V, A_*], [0, A_W]], T⁻¹B = [B_V; 0], T⁻¹x₀ = [x₀_V; 0].
    T = [P Q]는 직교행렬이므로 T⁻¹ = Tᵀ 입니다.
    """

    t_matrix: np.ndarray
    a_v: np.ndarray
    a_star: np.ndarray
    a_w: np.ndarray
    b_v: np.ndarray
    x0_v: np.ndarray
    lower_left_residual: float
    input_residual: float
    state_residual: float

    @property
    def k(self) -> int:
        return self.a_v.shape[0]

    @property
    def n(self) -> int:
        return self.t_matrix.shape[0]

    @property
    def visible_basis(self) -> np.ndarray:
        return self.t_matrix[:, : self.k]

    @property
    def hidden_basis(self) -> np.ndarray:
        return self.t_matrix[:, self.k:]
