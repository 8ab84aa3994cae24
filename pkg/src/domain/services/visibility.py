"""가시 부분공간 V(x₀) 계산."""
import logging
from typing import Tuple

import numpy as np
from scipy.linalg import null_space

from ..entities.lti_system import LtiSystem, Trajectory
from ..entities.subspace import Subspace, BlockForm
from ..exceptions import InvalidInputError, DimensionMismatchError, NumericalDegeneracyError

logger = logging.getLogger(__name__)

DEFAULT_RANK_RTOL = 1e-10
MAX_TRANSFORM_CONDITION = 1e12


def numerical_rank(singular_values: np.ndarray, rtol: float) -> int:
    """상대 임계값 rtol·σ_max 보다 큰 특이값 개수."""
    if singular_values.size == 0 or singular_values[0] <= 0:
        return 0
    return int(np.count_nonzero(singular_values > rtol * singular_values[0]))


class VisibilityAnalyzer:
    """
    크릴로프 열 [x₀ B], A[x₀ B], …, A^{n−1}[x₀ B] 의 열공간으로
    가시 부분공간을 구하는 도메인 서비스.
    """

    @staticmethod
    def krylov_matrix(sys: LtiSystem, x0: np.ndarray) -> np.ndarray:
        """
        크릴로프 행렬 K = [S, AS, …, A^{n−1}S], S = [x₀ B].

        거듭제곱을 명시적으로 만들지 않고 행렬 곱을 반복합니다.
        열 블록은 정규화하지 않습니다.

        Returns:
            n×(n·(m+1)) 행렬
        """
        x0 = VisibilityAnalyzer.state_vector(sys, x0)
        seed_block = np.column_stack([x0, sys.b_matrix])

        blocks = [seed_block]
        current = seed_block
        for _ in range(sys.n - 1):
            current = sys.a_matrix @ current
            blocks.append(current)

        return np.hstack(blocks)

    @staticmethod
    def visible_subspace(
        sys: LtiSystem,
        x0: np.ndarray,
        rtol: float = DEFAULT_RANK_RTOL,
    ) -> Subspace:
        """
        크릴로프 행렬의 SVD 임계 처리로 V(x₀) 를 구합니다.

        k = #{σ_i > rtol·σ_max} 이고, 기저는 대응하는 좌특이벡터입니다.
        """
        if not rtol > 0:
            raise InvalidInputError(f"rtol은 양수여야 합니다: {rtol}")

        krylov = VisibilityAnalyzer.krylov_matrix(sys, x0)
        left, singular_values, _ = np.linalg.svd(krylov, full_matrices=False)
        k = numerical_rank(singular_values, rtol)

        logger.debug(f"가시 차원 k={k}/{sys.n}, σ={singular_values}")

        return Subspace(
            basis=left[:, :k].copy(),
            k=k,
            singular_values=singular_values,
            rtol=rtol,
        )

    @staticmethod
    def block_form(sys: LtiSystem, x0: np.ndarray, sub: Subspace) -> BlockForm:
        """
        T = [P Q] 좌표에서의 블록 형태를 계산합니다.

        Q는 Im(P)의 직교 여공간 기저입니다. 좌하단 블록은 버리지 않고
        그 크기를 lower_left_residual로 보고합니다.

        Raises:
            DimensionMismatchError: 부분공간 차원이 시스템과 다른 경우
            NumericalDegeneracyError: T의 조건수가 1e12를 넘는 경우
        """
        x0 = VisibilityAnalyzer.state_vector(sys, x0)
        if sub.n != sys.n:
            raise DimensionMismatchError(f"부분공간 차원이 다릅니다: {sub.n} vs {sys.n}")

        n, k = sys.n, sub.k
        transform = np.hstack([sub.basis, VisibilityAnalyzer.orthogonal_complement(sub.basis)])

        condition = np.linalg.cond(transform)
        if not condition <= MAX_TRANSFORM_CONDITION:
            raise NumericalDegeneracyError(f"적응 기저 T의 조건수가 너무 큽니다: {condition:.3e}")

        a_adapted = transform.T @ sys.a_matrix @ transform
        b_adapted = transform.T @ sys.b_matrix
        x0_adapted = transform.T @ x0

        return BlockForm(
            t_matrix=transform,
            a_v=a_adapted[:k, :k],
            a_star=a_adapted[:k, k:],
            a_w=a_adapted[k:, k:],
            b_v=b_adapted[:k, :],
            x0_v=x0_adapted[:k],
            lower_left_residual=float(np.linalg.norm(a_adapted[k:, :k])),
            input_residual=float(np.linalg.norm(b_adapted[k:, :])),
            state_residual=float(np.linalg.norm(x0_adapted[k:])),
        )

    @staticmethod
    def restrict(sys: LtiSystem, basis: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """가시 부분계 (PᵀAP, PᵀB)."""
        basis = np.asarray(basis, dtype=np.float64)
        if basis.ndim != 2 or basis.shape[0] != sys.n:
            raise DimensionMismatchError(f"기저 형태가 상태 차원과 맞지 않습니다: {basis.shape}")
        return basis.T @ sys.a_matrix @ basis, basis.T @ sys.b_matrix

    @staticmethod
    def principal_angle_deg(p1: np.ndarray, p2: np.ndarray) -> float:
        """
        두 부분공간 사이의 최대 주각(도).

        cos θ = σ_min(P₁ᵀP₂), sin θ = σ_max((I − P₁P₁ᵀ)P₂) 를 함께 써서
        작은 각도에서도 정밀도를 유지합니다.

        Raises:
            InvalidInputError: 두 기저의 열 수(k)가 다른 경우
        """
        p1 = np.asarray(p1, dtype=np.float64)
        p2 = np.asarray(p2, dtype=np.float64)
        if p1.shape != p2.shape:
            raise InvalidInputError(f"두 기저의 형태가 다릅니다: {p1.shape} vs {p2.shape}")
        if p1.shape[1] == 0:
            return 0.0

        overlap = p1.T @ p2
        cos_min = np.linalg.svd(overlap, compute_uv=False).min()
        sin_max = np.linalg.svd(p2 - p1 @ overlap, compute_uv=False).max()

        angle = np.degrees(np.arctan2(sin_max, min(cos_min, 1.0)))
        return float(np.clip(angle, 0.0, 90.0))

    @staticmethod
    def empirical_visible_basis(
        traj: Trajectory,
        tau: float = DEFAULT_RANK_RTOL,
    ) -> Tuple[np.ndarray, int]:
        """
        관측 궤적만으로 가시 기저를 추정합니다.

        X = [x[0] … x[T−1]] 의 특이값에서 σ_j/σ_{j+1} 가 최대인 j를
        σ_j > τ·σ_max 조건 아래 고릅니다 (동률이면 가장 작은 j).
        후보가 없으면 임계값을 넘는 특이값 개수를 씁니다.

        Returns:
            (n×k̂ 기저, k̂)
        """
        if not tau > 0:
            raise InvalidInputError(f"tau는 양수여야 합니다: {tau}")

        snapshots = traj.states[:-1].T if traj.length > 1 else traj.states.T
        left, singular_values, _ = np.linalg.svd(snapshots, full_matrices=False)

        above = numerical_rank(singular_values, tau)
        if above == 0:
            return np.zeros((traj.n, 0)), 0

        # 후보 j (1-기반) 는 σ_{j+1} 이 존재하고 σ_j 가 임계값을 넘는 인덱스
        candidates = min(above, singular_values.size - 1)
        if candidates >= 1:
            with np.errstate(divide="ignore"):
                ratios = singular_values[:candidates] / singular_values[1:candidates + 1]
            k_hat = int(np.argmax(ratios)) + 1
        else:
            k_hat = above

        logger.debug(f"경험적 가시 차원 k̂={k_hat}, σ={singular_values}")

        return left[:, :k_hat].copy(), k_hat

    @staticmethod
    def orthogonal_complement(basis: np.ndarray) -> np.ndarray:
        """정규직교 기저 P의 직교 여공간 기저 Q."""
        n, k = basis.shape
        if k == 0:
            return np.eye(n)
        if k == n:
            return np.zeros((n, 0))
        return null_space(basis.T)

    @staticmethod
    def state_vector(sys: LtiSystem, x0) -> np.ndarray:
        x0 = np.asarray(x0, dtype=np.float64).reshape(-1)
        if x0.shape[0] != sys.n:
            raise DimensionMismatchError(f"x0 차원이 다릅니다: {x0.shape[0]} vs {sys.n}")
        return x0
