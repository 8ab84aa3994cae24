"""실험 재현 실행 유스케이스."""
import json
import logging
from pathlib import Path
from typing import Callable, Optional

from pydantic import ValidationError

from ...domain.exceptions import InvalidConfigError, ResourceNotFoundError
from ...domain.repositories.estimator import SystemEstimator
from ...infrastructure.execution.trial_runner import TrialRunner
from ...infrastructure.sampling.ensemble_sampler import EnsembleSampler
from ...infrastructure.storage.result_storage import ResultStorage
from ..dto.run_config import RunConfig
from ..experiments import EXPERIMENTS, ExperimentContext

logger = logging.getLogger(__name__)


class RunExperimentUseCase:
    """
    RunConfig 하나를 해석해 실험을 실행하고 CSV / 메타데이터를 저장합니다.

    같은 설정(base_seed 포함)은 워커 수와 무관하게 같은 바이트를 냅니다.
    """

    def __init__(
        self,
        sampler: EnsembleSampler,
        estimator_factory: Callable[[str], SystemEstimator],
        result_storage: ResultStorage,
        base_seed: int = 12345,
        workers: int = 1,
        horizon: int = 80,
        euler_dt: float = 1.0,
        rank_rtol: float = 1e-10,
        pbh_eps: float = 1e-6,
        rho_target: float = 0.95,
        hurwitz_margin: float = 0.05,
    ):
        self._sampler = sampler
        self._estimator_factory = estimator_factory
        self._result_storage = result_storage
        self._base_seed = base_seed
        self._workers = workers
        self._horizon = horizon
        self._euler_dt = euler_dt
        self._rank_rtol = rank_rtol
        self._pbh_eps = pbh_eps
        self._rho_target = rho_target
        self._hurwitz_margin = hurwitz_margin

    @staticmethod
    def load_config(path: str) -> RunConfig:
        """
        Raises:
            ResourceNotFoundError: 설정 파일이 없는 경우
            InvalidConfigError: JSON이나 필드 검증이 실패한 경우
        """
        config_path = Path(path)
        if not config_path.is_file():
            raise ResourceNotFoundError(f"설정 파일을 찾을 수 없음: {config_path}")
        try:
            return RunConfig.model_validate(json.loads(config_path.read_text(encoding="utf-8")))
        except (json.JSONDecodeError, ValidationError) as e:
            raise InvalidConfigError(f"실행 설정이 잘못되었습니다 ({config_path}): {e}")

    def execute(
        self,
        config: RunConfig,
        output_dir: Optional[str] = None,
        workers: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> Path:
        """
        Args:
            config: 실행 설정
            output_dir: 출력 디렉토리 (설정의 output, 전역 설정 순으로 대체)
            workers: 워커 수 (설정의 workers, 전역 설정 순으로 대체)
            seed: base_seed 덮어쓰기

        Returns:
            결과 CSV 경로
        """
        if seed is not None:
            config = config.model_copy(update={"base_seed": seed})
        resolved = config.resolved(base_seed=self._base_seed, horizon=self._horizon, euler_dt=self._euler_dt)
        worker_count = workers or resolved.workers or self._workers

        entry = EXPERIMENTS[resolved.experiment_id]
        context = ExperimentContext(
            config=resolved,
            sampler=self._sampler,
            runner=TrialRunner(max_workers=worker_count),
            estimator_factory=self._estimator_factory,
            rank_rtol=self._rank_rtol,
            pbh_eps=self._pbh_eps,
            rho_target=self._rho_target,
            hurwitz_margin=self._hurwitz_margin,
        )

        name = resolved.experiment_id.value
        logger.info(f"실험 시작: {name} (trials={resolved.trials}, seed={resolved.base_seed}, workers={worker_count})")
        rows = entry.run(context)

        # 메타데이터는 워커 수와 출력 경로에 의존하지 않습니다
        recorded = resolved.model_dump(mode="json", exclude={"workers", "output"})
        path = self._result_storage.write(
            name,
            rows,
            entry.coords,
            recorded,
            output_dir=output_dir or resolved.output,
        )
        logger.info(f"실험 완료: {name}, {len(rows)}행")
        return path
