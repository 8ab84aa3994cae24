"""이산화, 궤적 시뮬레이션, 관측 잡음."""
import logging

import numpy as np
from scipy.linalg import expm

from ..entities.lti_system import LtiSystem, DiscreteSystem, Experiment, Trajectory
from ..exceptions import InvalidInputError, DimensionMismatchError

logger = logging.getLogger(__name__)


class LtiDynamics:
    """
    LTI 시스템의 이산화와 시뮬레이션을 담당하는 도메인 서비스.

    모든 메서드는 순수 함수이며 입력을 변경하지 않습니다.
    """

    @staticmethod
    def discretize_zoh(sys: LtiSystem, dt: float) -> DiscreteSystem:
        """
        영차 유지(ZOH) 정확 이산화.

        A_d = e^{AΔt}, B_d = ∫₀^{Δt} e^{As} B ds 를 증강 행렬
        [[A, B], [0, 0]] 의 지수 한 번으로 계산합니다.

        Args:
            sys: 연속시간 시스템
            dt: 샘플링 간격 Δt (> 0)

        Returns:
            이산시간 시스템

        Raises:
            InvalidInputError: dt가 양수가 아니거나 유한하지 않은 경우
        """
        if not (np.isfinite(dt) and dt > 0):
            raise InvalidInputError(f"dt는 양수여야 합니다: {dt}")

        n, m = sys.n, sys.m

        # M = [A  B]
        #     [0  0]
        augmented = np.zeros((n + m, n + m))
        augmented[:n, :n] = sys.a_matrix
        augmented[:n, n:] = sys.b_matrix

        # e^{MΔt} = [A_d  B_d]
        #           [ 0    I ]
        phi = expm(augmented * dt)
        if not np.all(np.isfinite(phi)):
            raise InvalidInputError(f"행렬 지수가 발산했습니다 (dt={dt})")

        return DiscreteSystem(ad_matrix=phi[:n, :n], bd_matrix=phi[:n, n:], dt=dt)

    @staticmethod
    def discretize_euler(sys: LtiSystem, dt: float) -> DiscreteSystem:
        """전진 오일러 1스텝 사상 (I + A dt, B dt)."""
        if not (np.isfinite(dt) and dt > 0):
            raise InvalidInputError(f"dt는 양수여야 합니다: {dt}")
        return DiscreteSystem(
            ad_matrix=np.eye(sys.n) + dt * sys.a_matrix,
            bd_matrix=dt * sys.b_matrix,
            dt=dt,
        )

    @staticmethod
    def simulate_discrete(dsys: DiscreteSystem, exp: Experiment) -> Trajectory:
        """
        x[j+1] = A_d x[j] + B_d u[j] 를 반복해 궤적을 생성합니다.

        Raises:
            InvalidInputError: 실험의 dt가 이산 시스템의 dt와 다른 경우
            DimensionMismatchError: x₀ 또는 입력 차원이 맞지 않는 경우
        """
        if not np.isclose(exp.dt, dsys.dt, rtol=1e-12, atol=0.0):
            raise InvalidInputError(f"실험 dt({exp.dt})와 시스템 dt({dsys.dt})가 다릅니다")
        LtiDynamics._check_dimensions(dsys.n, dsys.m, exp)

        states = np.empty((exp.horizon + 1, dsys.n))
        states[0] = exp.x0
        for j, u in enumerate(exp.inputs):
            states[j + 1] = dsys.ad_matrix @ states[j] + dsys.bd_matrix @ u

        return Trajectory(states=states, dt=exp.dt)

    @staticmethod
    def simulate_euler(sys: LtiSystem, exp: Experiment) -> Trajectory:
        """x[j+1] = x[j] + dt·(A x[j] + B u[j]) 전진 오일러 궤적."""
        LtiDynamics._check_dimensions(sys.n, sys.m, exp)

        states = np.empty((exp.horizon + 1, sys.n))
        states[0] = exp.x0
        for j, u in enumerate(exp.inputs):
            x = states[j]
            states[j + 1] = x + exp.dt * (sys.a_matrix @ x + sys.b_matrix @ u)

        return Trajectory(states=states, dt=exp.dt)

    @staticmethod
    def add_noise(traj: Trajectory, sigma: float, seed: int) -> Trajectory:
        """
        상태 궤적의 모든 성분에 독립 N(0, σ²) 잡음을 더합니다.

        sigma = 0 이면 입력 궤적을 그대로 반환합니다.
        """
        if not (np.isfinite(sigma) and sigma >= 0):
            raise InvalidInputError(f"sigma는 0 이상이어야 합니다: {sigma}")
        if sigma == 0:
            return traj

        rng = np.random.default_rng(seed)
        noisy = traj.states + sigma * rng.standard_normal(traj.states.shape)
        return Trajectory(states=noisy, dt=traj.dt)

    @staticmethod
    def _check_dimensions(n: int, m: int, exp: Experiment) -> None:
        if exp.x0.shape[0] != n:
            raise DimensionMismatchError(f"x0 차원이 다릅니다: {exp.x0.shape[0]} vs {n}")
        if exp.m != m:
            raise DimensionMismatchError(f"입력 차원이 다릅니다: {exp.m} vs {m}")
