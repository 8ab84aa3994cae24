"""의존성 주입 컨테이너."""
from dependency_injector import containers, providers

from . import __version__
from .infrastructure.config.settings import get_settings
from .infrastructure.estimation.dmdc import DmdcEstimator
from .infrastructure.estimation.stlsq import StlsqEstimator
from .infrastructure.sampling.ensemble_sampler import EnsembleSampler
from .infrastructure.storage.result_storage import ResultStorage
from .infrastructure.storage.system_storage import SystemFileStorage
from .application.use_cases.analyze_visibility import AnalyzeVisibilityUseCase
from .application.use_cases.compute_margins import ComputeMarginsUseCase
from .application.use_cases.fit_system import FitSystemUseCase
from .application.use_cases.run_experiment import RunExperimentUseCase
from .application.use_cases.sample_consistent_set import SampleConsistentSetUseCase


class Container(containers.DeclarativeContainer):
    """애플리케이션 DI 컨테이너."""

    # 설정
    config = providers.Singleton(get_settings)

    # 인프라스트럭처 - 파일 입출력
    system_storage = providers.Singleton(SystemFileStorage)

    result_storage = providers.Singleton(
        ResultStorage,
        output_dir=config.provided.output_dir,
        version=__version__,
    )

    # 인프라스트럭처 - 앙상블 생성기
    ensemble_sampler = providers.Singleton(
        EnsembleSampler,
        density_tau=config.provided.density_tau,
        rho_target=config.provided.rho_target,
        rank_rtol=config.provided.rank_rtol,
        max_attempts=config.provided.max_sampling_attempts,
    )

    # 인프라스트럭처 - 추정기 레지스트리 (moesp는 DMDc와 같은 해)
    estimators = providers.FactoryAggregate(
        dmdc=providers.Factory(DmdcEstimator, rcond=config.provided.lstsq_rcond),
        moesp=providers.Factory(DmdcEstimator, rcond=config.provided.lstsq_rcond),
        stlsq=providers.Factory(
            StlsqEstimator,
            threshold=config.provided.stlsq_threshold,
            iterations=config.provided.stlsq_iterations,
            rcond=config.provided.lstsq_rcond,
        ),
    )

    # 애플리케이션 - 유스케이스
    compute_margins_use_case = providers.Factory(
        ComputeMarginsUseCase,
        storage=system_storage,
        pbh_eps=config.provided.pbh_eps,
        rank_rtol=config.provided.rank_rtol,
        gramian_horizon_steps=config.provided.gramian_horizon_steps,
        gramian_dt=config.provided.gramian_dt,
    )

    analyze_visibility_use_case = providers.Factory(
        AnalyzeVisibilityUseCase,
        storage=system_storage,
        rank_rtol=config.provided.rank_rtol,
    )

    sample_consistent_set_use_case = providers.Factory(
        SampleConsistentSetUseCase,
        storage=system_storage,
        rank_rtol=config.provided.rank_rtol,
        consistency_tol=config.provided.consistency_tol,
    )

    fit_system_use_case = providers.Factory(
        FitSystemUseCase,
        storage=system_storage,
        estimator_factory=estimators.provider,
    )

    run_experiment_use_case = providers.Factory(
        RunExperimentUseCase,
        sampler=ensemble_sampler,
        estimator_factory=estimators.provider,
        result_storage=result_storage,
        base_seed=config.provided.base_seed,
        workers=config.provided.workers,
        horizon=config.provided.horizon,
        euler_dt=config.provided.euler_dt,
        rank_rtol=config.provided.rank_rtol,
        pbh_eps=config.provided.pbh_eps,
        rho_target=config.provided.rho_target,
        hurwitz_margin=config.provided.hurwitz_margin,
    )
