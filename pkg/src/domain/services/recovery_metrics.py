"""복원 오차 계산 서비스."""
from typing import Tuple

import numpy as np

from ..exceptions import InvalidInputError, DimensionMismatchError

MatrixPair = Tuple[np.ndarray, np.ndarray]


class RecoveryMetrics:
    """
    추정치와 참값 사이의 상대 Frobenius 오차를 계산하는 도메인 서비스.
    """

    @staticmethod
    def ree_full(truth: MatrixPair, fit: MatrixPair) -> float:
        """
        REE_full = ‖[Â B̂] − [A B]‖_F / ‖[A B]‖_F.

        Raises:
            InvalidInputError: ‖[A B]‖_F = 0 인 경우
        """
        true_stack = RecoveryMetrics._stack(truth)
        fit_stack = RecoveryMetrics._stack(fit)
        if true_stack.shape != fit_stack.shape:
            raise DimensionMismatchError(f"형태가 다릅니다: {true_stack.shape} vs {fit_stack.shape}")

        scale = np.linalg.norm(true_stack)
        if scale == 0:
            raise InvalidInputError("참 시스템 [A B] 가 0이면 상대 오차를 정의할 수 없습니다")
        return float(np.linalg.norm(fit_stack - true_stack) / scale)

    @staticmethod
    def ree_vis(truth: MatrixPair, fit: MatrixPair, basis: np.ndarray) -> float:
        """
        REE_vis: 기저 P 로 제한한 [PᵀAP PᵀB] 의 상대 오차.

        Raises:
            InvalidInputError: 제한된 참값이 0인 경우
        """
        basis = np.asarray(basis, dtype=np.float64)
        restricted_truth = RecoveryMetrics._restrict(truth, basis)
        restricted_fit = RecoveryMetrics._restrict(fit, basis)

        true_stack = np.hstack(restricted_truth)
        scale = np.linalg.norm(true_stack)
        if scale == 0:
            raise InvalidInputError("제한된 참 시스템 [A_V B_V] 가 0입니다")
        return float(np.linalg.norm(np.hstack(restricted_fit) - true_stack) / scale)

    @staticmethod
    def min_norm_full_error(truth: MatrixPair, basis: np.ndarray) -> float:
        """
        최소 노름 추정 Â = A P Pᵀ 가 낼 REE_full 예측값 ‖A(I − PPᵀ)‖_F / ‖[A B]‖_F.
        """
        a_matrix, _ = truth
        hidden_part = a_matrix - a_matrix @ basis @ basis.T
        return float(np.linalg.norm(hidden_part) / np.linalg.norm(RecoveryMetrics._stack(truth)))

    @staticmethod
    def _restrict(pair: MatrixPair, basis: np.ndarray) -> MatrixPair:
        a_matrix, b_matrix = (np.asarray(x, dtype=np.float64) for x in pair)
        if basis.ndim != 2 or basis.shape[0] != a_matrix.shape[0]:
            raise DimensionMismatchError(f"기저 형태가 상태 차원과 맞지 않습니다: {basis.shape}")
        return basis.T @ a_matrix @ basis, basis.T @ b_matrix

    @staticmethod
    def _stack(pair: MatrixPair) -> np.ndarray:
        a_matrix, b_matrix = (np.asarray(x, dtype=np.float64) for x in pair)
        return np.hstack([a_matrix, b_matrix.reshape(a_matrix.shape[0], -1)])
