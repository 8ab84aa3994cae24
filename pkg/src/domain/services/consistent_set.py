"""실험 일관 집합 [A, B]_e 의 구성적 매개화와 궤적 잔차 검증."""
import logging
from typing import Iterable, List

import numpy as np

from ..entities.lti_system import LtiSystem, Experiment
from ..entities.consistent_param import ConsistentParam
from ..exceptions import DimensionMismatchError, InvalidInputError
from .dynamics import LtiDynamics
from .visibility import VisibilityAnalyzer, DEFAULT_RANK_RTOL

logger = logging.getLogger(__name__)

DEFAULT_CONSISTENCY_TOL = 1e-8


class ConsistentSetBuilder:
    """
    Ã = T [[A_V, Θ], [0, Ψ]] Tᵀ, B̃ = B 로 일관 집합의 원소를 만듭니다.

    T는 visibility의 직교 적응 기저이므로 Θ, Ψ는 그 좌표계 기준입니다.
    """

    @staticmethod
    def consistent_member(
        sys: LtiSystem,
        x0: np.ndarray,
        param: ConsistentParam,
        rtol: float = DEFAULT_RANK_RTOL,
    ) -> LtiSystem:
        """
        파라미터 (Θ, Ψ) 에 대응하는 일관 시스템을 반환합니다.

        Raises:
            DimensionMismatchError: param 차원이 가시 차원 k와 맞지 않는 경우
        """
        subspace = VisibilityAnalyzer.visible_subspace(sys, x0, rtol=rtol)
        block = VisibilityAnalyzer.block_form(sys, x0, subspace)

        k, hidden = block.k, sys.n - block.k
        if param.theta.shape != (k, hidden) or param.psi.shape != (hidden, hidden):
            raise DimensionMismatchError(
                f"파라미터 차원이 맞지 않습니다: theta {param.theta.shape}, psi {param.psi.shape} "
                f"(기대값 ({k}, {hidden}), ({hidden}, {hidden}))"
            )

        adapted = np.zeros((sys.n, sys.n))
        adapted[:k, :k] = block.a_v
        adapted[:k, k:] = param.theta
        adapted[k:, k:] = param.psi

        transform = block.t_matrix
        return LtiSystem(a_matrix=transform @ adapted @ transform.T, b_matrix=sys.b_matrix)

    @staticmethod
    def true_param(sys: LtiSystem, x0: np.ndarray, rtol: float = DEFAULT_RANK_RTOL) -> ConsistentParam:
        """참 시스템 자신에 대응하는 파라미터 (A_*, A_W)."""
        subspace = VisibilityAnalyzer.visible_subspace(sys, x0, rtol=rtol)
        block = VisibilityAnalyzer.block_form(sys, x0, subspace)
        return ConsistentParam(theta=block.a_star, psi=block.a_w)

    @staticmethod
    def sample_consistent(
        sys: LtiSystem,
        x0: np.ndarray,
        scale: float,
        seed: int,
        rtol: float = DEFAULT_RANK_RTOL,
    ) -> LtiSystem:
        """
        Θ, Ψ 성분을 i.i.d. N(0, scale²) 로 뽑아 일관 원소를 만듭니다.

        V(x₀) = ℝⁿ 이면 유일한 원소인 (A, B) 를 그대로 반환합니다.
        """
        if not scale > 0:
            raise InvalidInputError(f"scale은 양수여야 합니다: {scale}")

        subspace = VisibilityAnalyzer.visible_subspace(sys, x0, rtol=rtol)
        if subspace.is_full:
            return sys

        k, hidden = subspace.k, sys.n - subspace.k
        rng = np.random.default_rng(seed)
        param = ConsistentParam(
            theta=scale * rng.standard_normal((k, hidden)),
            psi=scale * rng.standard_normal((hidden, hidden)),
        )
        return ConsistentSetBuilder.consistent_member(sys, x0, param, rtol=rtol)

    @staticmethod
    def consistency_residual(sys1: LtiSystem, sys2: LtiSystem, exp: Experiment) -> float:
        """
        두 시스템의 ZOH 정확 궤적 차이 max_j ‖φ₁[j] − φ₂[j]‖.

        궤적 규모 max(1, max_j ‖φ₁[j]‖) 로 나누어 단위 정규화된 값을 반환합니다.

        Raises:
            DimensionMismatchError: 두 시스템의 차원이 다른 경우
        """
        if (sys1.n, sys1.m) != (sys2.n, sys2.m):
            raise DimensionMismatchError(
                f"시스템 차원이 다릅니다: ({sys1.n}, {sys1.m}) vs ({sys2.n}, {sys2.m})"
            )

        first = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(sys1, exp.dt), exp).states
        second = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(sys2, exp.dt), exp).states

        scale = max(1.0, float(np.linalg.norm(first, axis=1).max()))
        return float(np.linalg.norm(first - second, axis=1).max()) / scale

    @staticmethod
    def is_singleton(sys: LtiSystem, x0: np.ndarray, rtol: float = DEFAULT_RANK_RTOL) -> bool:
        """[A, B]_e 가 한 원소뿐인지, 즉 V(x₀) = ℝⁿ 인지."""
        return VisibilityAnalyzer.visible_subspace(sys, x0, rtol=rtol).is_full

    @staticmethod
    def filter_consistent(
        truth: LtiSystem,
        candidates: Iterable[LtiSystem],
        experiments: Iterable[Experiment],
        tol: float = DEFAULT_CONSISTENCY_TOL,
    ) -> List[LtiSystem]:
        """모든 실험에서 잔차가 tol 미만인 후보만 남깁니다 (다중 실험 교집합)."""
        experiments = list(experiments)
        survivors = [
            candidate
            for candidate in candidates
            if all(
                ConsistentSetBuilder.consistency_residual(truth, candidate, exp) < tol
                for exp in experiments
            )
        ]
        logger.debug(f"다중 실험 필터 통과: {len(survivors)}개")
        return survivors
