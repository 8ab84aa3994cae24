"""희소 랜덤 시스템 앙상블과 초기 상태 생성기."""
import logging
from typing import Optional, Tuple

import numpy as np
from scipy.stats import ortho_group, truncnorm

from ...domain.entities.ensemble_spec import EnsembleSpec, EnsembleFamily
from ...domain.entities.lti_system import LtiSystem
from ...domain.exceptions import InvalidInputError, InsufficientSamplesError
from ...domain.services.identifiability import IdentifiabilityTester
from ...domain.services.visibility import VisibilityAnalyzer, DEFAULT_RANK_RTOL
from .seeding import derive_seed

logger = logging.getLogger(__name__)

TRUNCATION_LEVEL = 0.1
MIN_X0_NORM = 1e-14


class EnsembleSampler:
    """
    랜덤 시스템 앙상블 생성기.

    모든 생성기는 (명세, 시드) 가 같으면 같은 결과를 내며, 상태를 갖지 않으므로
    병렬 시행에서 공유해도 안전합니다.
    """

    def __init__(
        self,
        density_tau: float = 1e-12,
        rho_target: float = 0.95,
        rank_rtol: float = DEFAULT_RANK_RTOL,
        max_attempts: int = 10000,
    ):
        """
        Args:
            density_tau: 실현 밀도 계산 시 0으로 볼 절댓값 임계값
            rho_target: rho_target이 없는 절단 가우시안 명세에 쓸 스펙트럼 반경 상한
            rank_rtol: 가제어 계수/가시 차원 계산의 상대 허용오차
            max_attempts: 기각 샘플링 시도 한도
        """
        self.density_tau = density_tau
        self.rho_target = rho_target
        self.rank_rtol = rank_rtol
        self.max_attempts = max_attempts

    def sample(self, spec: EnsembleSpec) -> LtiSystem:
        """명세의 계열에 맞는 생성기로 시스템을 뽑습니다."""
        if spec.family == EnsembleFamily.TRUNC_GAUSS_SPARSE:
            return self.trunc_gauss_sparse(spec)
        return self.ginibre_sparse(spec)

    def ginibre_sparse(self, spec: EnsembleSpec) -> LtiSystem:
        """
        A_ij = X_ij·M_ij, X ~ N(0, 1/n), M ~ Ber(p). B도 같은 방식입니다.

        마스크는 대각 성분에도 적용됩니다.
        """
        rng = np.random.default_rng(spec.seed)
        scale = 1.0 / np.sqrt(spec.n)

        a_matrix = scale * rng.standard_normal((spec.n, spec.n)) * (rng.random((spec.n, spec.n)) < spec.density_p)
        b_matrix = scale * rng.standard_normal((spec.n, spec.m)) * (rng.random((spec.n, spec.m)) < spec.density_p)

        if spec.rho_target is not None:
            a_matrix = self.stabilize(a_matrix, spec.rho_target)
        return LtiSystem(a_matrix=a_matrix, b_matrix=b_matrix)

    def trunc_gauss_sparse(self, spec: EnsembleSpec) -> LtiSystem:
        """
        0이 아닌 성분을 (−∞, −0.1] ∪ [0.1, ∞) 로 절단된 N(0, 1) 에서 뽑고
        A를 스펙트럼 반경 rho_target 이하로 안정화합니다.
        """
        rng = np.random.default_rng(spec.seed)
        rho_target = spec.rho_target if spec.rho_target is not None else self.rho_target

        a_matrix = self._truncated_entries(rng, (spec.n, spec.n)) * (rng.random((spec.n, spec.n)) < spec.density_p)
        b_matrix = self._truncated_entries(rng, (spec.n, spec.m)) * (rng.random((spec.n, spec.m)) < spec.density_p)

        return LtiSystem(a_matrix=self.stabilize(a_matrix, rho_target), b_matrix=b_matrix)

    @staticmethod
    def stabilize(a_matrix: np.ndarray, rho_target: float) -> np.ndarray:
        """A' = A·min(1, rho_target/ρ(A))."""
        if not rho_target > 0:
            raise InvalidInputError(f"rho_target은 양수여야 합니다: {rho_target}")

        a_matrix = np.asarray(a_matrix, dtype=np.float64)
        radius = float(np.max(np.abs(np.linalg.eigvals(a_matrix)))) if a_matrix.size else 0.0
        if radius <= rho_target:
            return a_matrix.copy()
        return a_matrix * (rho_target / radius)

    @staticmethod
    def hurwitz_shift(a_matrix: np.ndarray, margin: float = 0.05) -> np.ndarray:
        """
        스펙트럼 가로좌표가 −margin 이하가 되도록 A − sI 로 이동합니다.

        이미 조건을 만족하면 A를 그대로 반환합니다. 크릴로프 열공간은 변하지 않습니다.
        """
        if margin < 0:
            raise InvalidInputError(f"margin은 0 이상이어야 합니다: {margin}")

        a_matrix = np.asarray(a_matrix, dtype=np.float64)
        abscissa = float(np.max(np.linalg.eigvals(a_matrix).real))
        shift = abscissa + margin
        if shift <= 0:
            return a_matrix.copy()
        return a_matrix - shift * np.eye(a_matrix.shape[0])

    def sample_x0(self, n: int, p_x0: float, seed: int) -> np.ndarray:
        """
        단위 구면의 가우시안 방향에 Ber(p_x0) 마스크를 씌우고 재정규화합니다.

        마스크 후 노름이 1e-14 미만이면 다시 뽑습니다.
        """
        if not 0.0 < p_x0 <= 1.0:
            raise InvalidInputError(f"p_x0는 (0, 1] 범위여야 합니다: {p_x0}")

        rng = np.random.default_rng(seed)
        for _ in range(self.max_attempts):
            vector = rng.standard_normal(n)
            if p_x0 < 1.0:
                vector = vector * (rng.random(n) < p_x0)
            norm = np.linalg.norm(vector)
            if norm >= MIN_X0_NORM:
                return vector / norm

        raise InsufficientSamplesError(f"{self.max_attempts}회 안에 0이 아닌 x0를 얻지 못했습니다 (n={n}, p={p_x0})")

    def realized_density(self, matrix: np.ndarray, tau: Optional[float] = None) -> float:
        """δ_τ(X) = |X_ij| > τ 인 성분의 비율. 빈 행렬은 0입니다."""
        tau = self.density_tau if tau is None else tau
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.size == 0:
            return 0.0
        return float(np.count_nonzero(np.abs(matrix) > tau) / matrix.size)

    @staticmethod
    def pe_input(m: int, horizon: int, seed: int) -> np.ndarray:
        """
        채널별 i.i.d. 가우시안 입력을 경험적 표준편차로 정규화합니다.

        Returns:
            T×m 입력 시퀀스
        """
        if horizon < 2:
            raise InvalidInputError(f"입력 길이 T는 2 이상이어야 합니다: {horizon}")
        if m < 0:
            raise InvalidInputError(f"m은 0 이상이어야 합니다: {m}")

        rng = np.random.default_rng(seed)
        inputs = rng.standard_normal((horizon, m))
        if m == 0:
            return inputs
        return inputs / inputs.std(axis=0)

    def planted_visibility_system(
        self,
        n: int,
        k: int,
        m: int,
        seed: int,
        rho_target: Optional[float] = None,
    ) -> Tuple[LtiSystem, np.ndarray]:
        """
        dim V(x₀) = k 가 되도록 심은 시스템과 단위 초기 상태를 만듭니다.

        적응 좌표에서 A = [[A_V, A_*], [0, A_W]], B = [B_V; 0], x₀ = [x₀_V; 0] 이고,
        무작위 직교 행렬로 회전합니다. 수치 가시 차원이 k와 다르면 다시 뽑습니다.

        Raises:
            InvalidInputError: k가 [1, n] 밖인 경우
            InsufficientSamplesError: 시도 한도 안에 k를 맞추지 못한 경우
        """
        if not 1 <= k <= n:
            raise InvalidInputError(f"k는 1 이상 n 이하여야 합니다: k={k}, n={n}")
        rho_target = self.rho_target if rho_target is None else rho_target

        for attempt in range(self.max_attempts):
            rng = np.random.default_rng(derive_seed(seed, attempt))

            adapted = rng.standard_normal((n, n)) / np.sqrt(n)
            adapted[k:, :k] = 0.0
            adapted = self.stabilize(adapted, rho_target)

            b_adapted = np.zeros((n, m))
            b_adapted[:k] = rng.standard_normal((k, m))
            x0_adapted = np.zeros(n)
            x0_adapted[:k] = rng.standard_normal(k)

            rotation = ortho_group.rvs(n, random_state=rng) if n > 1 else np.eye(1)
            x0 = rotation @ x0_adapted
            norm = np.linalg.norm(x0)
            if norm < MIN_X0_NORM:
                continue

            system = LtiSystem(a_matrix=rotation @ adapted @ rotation.T, b_matrix=rotation @ b_adapted)
            x0 = x0 / norm
            if VisibilityAnalyzer.visible_subspace(system, x0, rtol=self.rank_rtol).k == k:
                return system, x0

        raise InsufficientSamplesError(f"가시 차원 k={k} 시스템을 {self.max_attempts}회 안에 만들지 못했습니다")

    def curate_uncontrollable(self, spec: EnsembleSpec) -> LtiSystem:
        """
        rank C_n(A, B) < n 인 시스템이 나올 때까지 기각 샘플링합니다.

        시도 a 의 시드는 derive_seed(spec.seed, a) 입니다.

        Raises:
            InsufficientSamplesError: 시도 한도를 넘긴 경우
        """
        for attempt in range(self.max_attempts):
            candidate = self.sample(
                EnsembleSpec(
                    n=spec.n,
                    m=spec.m,
                    density_p=spec.density_p,
                    family=spec.family,
                    rho_target=spec.rho_target,
                    seed=derive_seed(spec.seed, attempt),
                )
            )
            if IdentifiabilityTester.controllability_rank(candidate, rtol=self.rank_rtol) < spec.n:
                if attempt:
                    logger.debug(f"가제어 시스템 {attempt}개 기각 후 선별 완료")
                return candidate

        logger.warning(f"비가제어 시스템 선별 실패: {spec}")
        raise InsufficientSamplesError(f"{self.max_attempts}회 안에 비가제어 시스템을 얻지 못했습니다")

    @staticmethod
    def _truncated_entries(rng: np.random.Generator, shape: Tuple[int, int]) -> np.ndarray:
        magnitudes = truncnorm.rvs(TRUNCATION_LEVEL, np.inf, size=shape, random_state=rng)
        signs = rng.choice([-1.0, 1.0], size=shape)
        return magnitudes * signs
