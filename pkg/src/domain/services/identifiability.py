"""식별가능성 검사: 가제어성, 좌고유벡터 정렬, PBH 마진, 정보성 그래미안."""
import logging
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.linalg import expm, null_space
from scipy.optimize import minimize

from ..entities.lti_system import LtiSystem, Experiment, Trajectory
from ..entities.reports import EigenAlignment, GramianReport, MarginReport
from ..exceptions import InvalidInputError, DimensionMismatchError
from .visibility import VisibilityAnalyzer, numerical_rank, DEFAULT_RANK_RTOL

logger = logging.getLogger(__name__)

DEFAULT_PBH_EPS = 1e-6
DEGENERATE_GAP_RTOL = 1e-8
REFINE_GRID_POINTS = 9
REFINE_RADIUS = 1e-2


class IdentifiabilityTester:
    """
    실험 하나 (x₀, u) 가 (A, B) 를 얼마나 결정하는지 판정하는 도메인 서비스.
    """

    @staticmethod
    def controllability_rank(sys: LtiSystem, rtol: float = DEFAULT_RANK_RTOL) -> int:
        """칼만 가제어성 행렬 [B, AB, …, A^{n−1}B] 의 수치 랭크. m = 0 이면 0."""
        if sys.m == 0:
            return 0

        blocks = [sys.b_matrix]
        for _ in range(sys.n - 1):
            blocks.append(sys.a_matrix @ blocks[-1])
        singular_values = np.linalg.svd(np.hstack(blocks), compute_uv=False)
        return numerical_rank(singular_values, rtol)

    @staticmethod
    def eig_alignment_margins(sys: LtiSystem, x0: np.ndarray) -> EigenAlignment:
        """
        μ_i = ‖w_iᵀ[x₀ B]‖₂ / (‖w_i‖₂ ‖[x₀ B]‖₂).

        좌고유벡터는 Aᵀ의 우고유벡터로 구합니다. 고유값 간격이
        1e-8·‖A‖ 이하이면 결과에 degenerate 플래그를 붙입니다.

        Raises:
            InvalidInputError: [x₀ B] = 0 인 경우
        """
        seed_block = IdentifiabilityTester._seed_block(sys, x0)
        seed_norm = np.linalg.norm(seed_block, 2)
        if seed_norm == 0:
            raise InvalidInputError("[x0 B] 가 0이면 정렬도를 정의할 수 없습니다")

        eigenvalues, left_vectors = np.linalg.eig(sys.a_matrix.T)

        mu_values = []
        for i in range(sys.n):
            w = left_vectors[:, i]
            overlap = np.linalg.norm(w @ seed_block)
            mu = overlap / (np.linalg.norm(w) * seed_norm)
            mu_values.append(float(np.clip(mu, 0.0, 1.0)))

        degenerate = IdentifiabilityTester._is_degenerate(eigenvalues, sys.a_matrix)
        if degenerate:
            logger.warning(
                "A의 스펙트럼이 결함/군집 상태입니다. μ 값은 참고용이며 d_PBH를 기준으로 삼으세요"
            )

        return EigenAlignment(
            mu_values=mu_values,
            mu_min=min(mu_values),
            degenerate=degenerate,
        )

    @staticmethod
    def pbh_margin(sys: LtiSystem, x0: np.ndarray, refine: bool = False) -> float:
        """
        고정 실험 PBH 마진 d = min_{λ∈σ(A)} σ_min(Qᵀ[λI − A, B]).

        Q는 x₀^⊥ 의 정규직교 기저이며 x₀ = 0 이면 Q = I 입니다.
        refine=True 이면 각 고유값 근처의 복소 λ 에서도 최소화합니다.
        n = 1 이고 x₀ ≠ 0 이면 남는 행이 없으므로 +inf 를 반환합니다.
        """
        x0 = VisibilityAnalyzer.state_vector(sys, x0)
        n = sys.n

        if np.linalg.norm(x0) == 0:
            projector = np.eye(n)
        else:
            projector = null_space(x0.reshape(1, -1))
        if projector.shape[1] == 0:
            return float("inf")

        def smallest_singular_value(lam: complex) -> float:
            pencil = np.hstack([lam * np.eye(n) - sys.a_matrix, sys.b_matrix])
            return float(np.linalg.svd(projector.T @ pencil, compute_uv=False)[-1])

        eigenvalues = np.linalg.eigvals(sys.a_matrix)
        margin = min(smallest_singular_value(lam) for lam in eigenvalues)

        if refine:
            margin = min(margin, IdentifiabilityTester._refined_margin(eigenvalues, smallest_singular_value))

        logger.debug(f"PBH 마진 d={margin:.6e}")
        return margin

    @staticmethod
    def is_identifiable(sys: LtiSystem, x0: np.ndarray, eps: float = DEFAULT_PBH_EPS) -> bool:
        """이진 식별가능성 지표 1{d_PBH > ε}."""
        if not eps > 0:
            raise InvalidInputError(f"eps는 양수여야 합니다: {eps}")
        return IdentifiabilityTester.pbh_margin(sys, x0) > eps

    @staticmethod
    def informativeness_gramian(
        xi_seq: np.ndarray,
        u_seq: np.ndarray,
        dt: float,
        rtol: float = DEFAULT_RANK_RTOL,
    ) -> GramianReport:
        """
        G = Σ_j z[j] z[j]ᵀ · dt, z[j] = [ξ[j]; u[j]].

        회귀 행렬 Z의 특이값으로 랭크를 정합니다. σ_min(Z) > rtol·σ_max(Z) 이면
        정보성이 있고, 이는 λ_min(G) > dt·(rtol·σ_max)² 와 같습니다.
        크릴로프 랭크와 같은 rtol을 씁니다.

        Raises:
            InvalidInputError: 시퀀스가 비었거나 길이가 다른 경우
        """
        xi = IdentifiabilityTester._as_sequence(xi_seq, "xi_seq")
        u = IdentifiabilityTester._as_sequence(u_seq, "u_seq")
        if xi.shape[0] == 0 or u.shape[0] == 0:
            raise InvalidInputError("정보성 그래미안에는 비어있지 않은 시퀀스가 필요합니다")
        if xi.shape[0] != u.shape[0]:
            raise InvalidInputError(f"시퀀스 길이가 다릅니다: {xi.shape[0]} vs {u.shape[0]}")
        if not dt > 0:
            raise InvalidInputError(f"dt는 양수여야 합니다: {dt}")

        regressor = np.hstack([xi, u])
        size = regressor.shape[1]
        if size == 0:
            raise InvalidInputError("k + m = 0 이면 그래미안을 정의할 수 없습니다")

        gramian = dt * regressor.T @ regressor
        gramian = 0.5 * (gramian + gramian.T)

        singular_values = np.zeros(size)
        computed = np.linalg.svd(regressor, compute_uv=False)
        singular_values[: computed.size] = computed
        sigma_max = float(singular_values[0])

        return GramianReport(
            gramian=gramian,
            min_eig=dt * float(singular_values[-1]) ** 2,
            tolerance=dt * (rtol * sigma_max) ** 2,
            informative=numerical_rank(singular_values, rtol) == size,
        )

    @staticmethod
    def hankel_pe_order(u_seq: np.ndarray, r: int, rtol: float = DEFAULT_RANK_RTOL) -> bool:
        """
        깊이 r 블록 한켈 행렬 H_r(u) 가 행 랭크 r·m 을 갖는지 검사합니다.

        Raises:
            InvalidInputError: r < 1 이거나 길이 N < r 인 경우
        """
        u = IdentifiabilityTester._as_sequence(u_seq, "u_seq")
        length, m = u.shape
        if r < 1:
            raise InvalidInputError(f"r은 1 이상이어야 합니다: {r}")
        if length < r:
            raise InvalidInputError(f"입력 길이 {length}가 한켈 깊이 {r}보다 짧습니다")
        if m == 0:
            return False

        # windows[j, c, i] = u[j + i, c]  →  H[i·m + c, j]
        windows = sliding_window_view(u, r, axis=0)
        hankel = windows.transpose(2, 1, 0).reshape(r * m, length - r + 1)
        singular_values = np.linalg.svd(hankel, compute_uv=False)
        return numerical_rank(singular_values, rtol) == r * m

    @staticmethod
    def augmented_gramian_min_eig(
        sys: LtiSystem,
        x0: np.ndarray,
        horizon_steps: int,
        dt: float,
    ) -> float:
        """
        증강 쌍 (A, [x₀ B]) 의 유한 구간 가제어성 그래미안 최소 고유값.

        W = Σ_{j=0}^{N−1} e^{A j dt} S Sᵀ e^{Aᵀ j dt} dt, S = [x₀ B].
        """
        if horizon_steps < 1:
            raise InvalidInputError(f"horizon_steps는 1 이상이어야 합니다: {horizon_steps}")
        if not dt > 0:
            raise InvalidInputError(f"dt는 양수여야 합니다: {dt}")

        propagated = IdentifiabilityTester._seed_block(sys, x0)
        step = expm(sys.a_matrix * dt)

        gramian = np.zeros((sys.n, sys.n))
        for _ in range(horizon_steps):
            gramian += propagated @ propagated.T * dt
            propagated = step @ propagated

        gramian = 0.5 * (gramian + gramian.T)
        return max(float(np.linalg.eigvalsh(gramian)[0]), 0.0)

    @staticmethod
    def margin_report(
        sys: LtiSystem,
        x0: np.ndarray,
        eps: float = DEFAULT_PBH_EPS,
        rtol: float = DEFAULT_RANK_RTOL,
        experiment: Optional[Experiment] = None,
        trajectory: Optional[Trajectory] = None,
        refine: bool = False,
        gramian_steps: Optional[int] = None,
        gramian_dt: float = 0.1,
    ) -> MarginReport:
        """
        모든 검사를 하나의 MarginReport로 묶습니다.

        experiment와 trajectory가 함께 주어지면 V(x₀) 로 사영한 궤적의
        정보성 그래미안 최소 고유값을 함께 보고합니다. gramian_steps가 있으면
        증강 쌍 (A, [x₀ B]) 의 유한 구간 그래미안 최소 고유값도 계산합니다.
        """
        alignment = IdentifiabilityTester.eig_alignment_margins(sys, x0)
        d_pbh = IdentifiabilityTester.pbh_margin(sys, x0, refine=refine)
        subspace = VisibilityAnalyzer.visible_subspace(sys, x0, rtol=rtol)

        gramian_min_eig = None
        informative = None
        if experiment is not None and trajectory is not None:
            samples = experiment.horizon
            if trajectory.length < samples:
                raise DimensionMismatchError(
                    f"궤적 길이({trajectory.length})가 입력 길이({samples})보다 짧습니다"
                )
            xi = trajectory.states[:samples] @ subspace.basis
            report = IdentifiabilityTester.informativeness_gramian(xi, experiment.inputs, experiment.dt, rtol=rtol)
            gramian_min_eig = report.min_eig
            informative = report.informative

        augmented = None
        if gramian_steps is not None:
            augmented = IdentifiabilityTester.augmented_gramian_min_eig(sys, x0, gramian_steps, gramian_dt)

        return MarginReport(
            mu_values=alignment.mu_values,
            mu_min=alignment.mu_min,
            d_pbh=d_pbh,
            ctrb_rank=IdentifiabilityTester.controllability_rank(sys, rtol=rtol),
            visible_dim=subspace.k,
            n=sys.n,
            eps=eps,
            identifiable=d_pbh > eps,
            degenerate_spectrum=alignment.degenerate,
            gramian_min_eig=gramian_min_eig,
            informative=informative,
            augmented_gramian_min_eig=augmented,
        )

    @staticmethod
    def _refined_margin(eigenvalues: np.ndarray, objective) -> float:
        """각 고유값 주변 복소 격자 탐색 후 Nelder–Mead로 다듬습니다."""
        best = np.inf
        offsets = np.linspace(-1.0, 1.0, REFINE_GRID_POINTS)
        for lam in eigenvalues:
            radius = REFINE_RADIUS * max(1.0, abs(lam))
            grid = [lam + radius * (a + 1j * b) for a in offsets for b in offsets]
            start = min(grid, key=objective)

            result = minimize(
                lambda z: objective(complex(z[0], z[1])),
                x0=np.array([start.real, start.imag]),
                method="Nelder-Mead",
                options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400},
            )
            best = min(best, objective(start), float(result.fun))
        return best

    @staticmethod
    def _is_degenerate(eigenvalues: np.ndarray, a_matrix: np.ndarray) -> bool:
        if eigenvalues.size < 2:
            return False
        gaps = np.abs(eigenvalues[:, None] - eigenvalues[None, :])
        np.fill_diagonal(gaps, np.inf)
        return bool(gaps.min() <= DEGENERATE_GAP_RTOL * np.linalg.norm(a_matrix, 2))

    @staticmethod
    def _seed_block(sys: LtiSystem, x0: np.ndarray) -> np.ndarray:
        x0 = VisibilityAnalyzer.state_vector(sys, x0)
        return np.column_stack([x0, sys.b_matrix])

    @staticmethod
    def _as_sequence(values, name: str) -> np.ndarray:
        array = np.asarray(values, dtype=np.float64)
        if array.ndim == 1:
            array = array.reshape(-1, 1)
        if array.ndim != 2:
            raise InvalidInputError(f"{name}은(는) (T, d) 형태여야 합니다 (현재 형태: {array.shape})")
        return array
