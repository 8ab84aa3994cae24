"""실험 러너가 공유하는 실행 문맥과 보조 함수."""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ...domain.entities.ensemble_spec import EnsembleSpec, EnsembleFamily
from ...domain.entities.lti_system import LtiSystem, DiscreteSystem, Experiment, Trajectory
from ...domain.exceptions import InsufficientSamplesError
from ...domain.repositories.estimator import SystemEstimator
from ...domain.services.dynamics import LtiDynamics
from ...domain.services.visibility import VisibilityAnalyzer
from ...infrastructure.execution.trial_runner import TrialRunner
from ...infrastructure.sampling.ensemble_sampler import EnsembleSampler
from ...infrastructure.sampling.seeding import derive_seed
from ..dto.result_row import ResultRow
from ..dto.run_config import RunConfig, Simulator

logger = logging.getLogger(__name__)

# derive_seed 의 첫 인덱스로 쓰는 스트림 구분자
SYSTEM_STREAM = 1
X0_STREAM = 2
INPUT_STREAM = 3
NOISE_STREAM = 4


@dataclass(frozen=True)
class Triple:
    """(A, B, x₀) 와 그 가시 차원."""

    index: int
    system: LtiSystem
    x0: np.ndarray
    k: int


@dataclass(frozen=True)
class ExperimentContext:
    """해석이 끝난 RunConfig와 실험에 필요한 어댑터 묶음."""

    config: RunConfig
    sampler: EnsembleSampler
    runner: TrialRunner
    estimator_factory: Callable[[str], SystemEstimator]
    rank_rtol: float = 1e-10
    pbh_eps: float = 1e-6
    rho_target: float = 0.95
    hurwitz_margin: float = 0.05

    def seed(self, *indices: int) -> int:
        return derive_seed(self.config.base_seed, *indices)


def value_code(value: float) -> int:
    """격자 좌표값을 시드 인덱스로 바꿉니다. 셀 시드가 격자 구성과 무관해집니다."""
    return int(round(float(value) * 1_000_000))


def sample_triples(ctx: ExperimentContext, per_stratum: bool = True) -> List[Triple]:
    """
    복원 실험용 (A, B, x₀) 를 가시 차원으로 층화해 뽑습니다.

    per_stratum이면 visible_dims의 각 k마다 trials개, 아니면 visible_dims에
    속하는 k를 가진 삼중쌍을 합쳐서 trials개 모읍니다. 층화 추출은 랭크 결정이
    임계값 근처인 삼중쌍 (Subspace.is_well_separated 가 거짓) 을 버립니다.
    """
    cfg = ctx.config
    n, m = cfg.dims[0], cfg.input_dim
    strata = list(cfg.visible_dims)

    if cfg.sampling == "planted":
        triples = []
        targets = [k for k in strata for _ in range(cfg.trials)] if per_stratum else [
            strata[t % len(strata)] for t in range(cfg.trials)
        ]
        for index, k in enumerate(targets):
            system, x0 = ctx.sampler.planted_visibility_system(
                n, min(k, n), m, seed=ctx.seed(SYSTEM_STREAM, n, k, index), rho_target=ctx.rho_target
            )
            triples.append(Triple(index=index, system=system, x0=x0, k=min(k, n)))
        return triples

    counts: Dict[int, int] = {k: 0 for k in strata}
    wanted = len(strata) * cfg.trials if per_stratum else cfg.trials
    triples: List[Triple] = []
    budget = ctx.sampler.max_attempts * len(strata)

    for attempt in range(budget):
        spec = EnsembleSpec(
            n=n,
            m=m,
            density_p=cfg.densities[0],
            family=EnsembleFamily.TRUNC_GAUSS_SPARSE,
            rho_target=ctx.rho_target,
            seed=ctx.seed(SYSTEM_STREAM, attempt),
        )
        system = ctx.sampler.curate_uncontrollable(spec)
        x0 = ctx.sampler.sample_x0(n, 1.0, seed=ctx.seed(X0_STREAM, attempt))
        subspace = VisibilityAnalyzer.visible_subspace(system, x0, rtol=ctx.rank_rtol)
        if not subspace.is_well_separated():
            continue
        k = subspace.k

        if k not in counts or (per_stratum and counts[k] >= cfg.trials):
            continue
        counts[k] += 1
        triples.append(Triple(index=len(triples), system=system, x0=x0, k=k))
        if len(triples) >= wanted:
            logger.info(f"층화 표본 {wanted}개 확보 ({attempt + 1}회 시도)")
            return triples

    raise InsufficientSamplesError(f"층화 표본을 채우지 못했습니다: {counts} (목표 {cfg.trials})")


def simulate_with_truth(
    system: LtiSystem,
    x0: np.ndarray,
    inputs: np.ndarray,
    simulator: Simulator,
    dt: float,
    hurwitz_margin: float,
) -> Tuple[Trajectory, Tuple[np.ndarray, np.ndarray]]:
    """
    선택한 방식으로 궤적을 만들고, 추정 오차의 기준이 될 이산 참값을 함께 반환합니다.
    """
    experiment = Experiment(x0=x0, inputs=inputs, dt=dt)

    if simulator == Simulator.EULER:
        truth = LtiDynamics.discretize_euler(system, dt)
        return LtiDynamics.simulate_euler(system, experiment), (truth.ad_matrix, truth.bd_matrix)

    if simulator == Simulator.ZOH:
        shifted = LtiSystem(
            a_matrix=EnsembleSampler.hurwitz_shift(system.a_matrix, hurwitz_margin),
            b_matrix=system.b_matrix,
        )
        truth = LtiDynamics.discretize_zoh(shifted, dt)
        return LtiDynamics.simulate_discrete(truth, experiment), (truth.ad_matrix, truth.bd_matrix)

    one_step = DiscreteSystem(ad_matrix=system.a_matrix, bd_matrix=system.b_matrix, dt=dt)
    return LtiDynamics.simulate_discrete(one_step, experiment), (system.a_matrix, system.b_matrix)


def collect_rows(
    records: Iterable[Dict],
    coord_names: Sequence[str],
    metrics: Sequence[str],
    mean_metrics: Sequence[str] = (),
) -> List[ResultRow]:
    """
    시행 레코드를 좌표별로 묶어 지표마다 ResultRow 하나를 만듭니다.

    셀 순서는 레코드에서 처음 등장한 순서를 따릅니다.
    """
    groups: Dict[Tuple, List[Dict]] = {}
    for record in records:
        key = tuple(record[name] for name in coord_names)
        groups.setdefault(key, []).append(record)

    rows = []
    for key, members in groups.items():
        coords = dict(zip(coord_names, key))
        for metric in metrics:
            samples = [member[metric] for member in members if metric in member]
            if samples:
                rows.append(ResultRow.aggregate(coords, metric, samples, use_mean=metric in mean_metrics))
    return rows
