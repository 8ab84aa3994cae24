"""부분계 복원 실험: 잡음 수준, 가시 차원, 샘플링 간격, 상태 차원 스윕."""
import logging
from typing import List

from ...domain.entities.lti_system import LtiSystem, Experiment
from ...domain.services.dynamics import LtiDynamics
from ...domain.services.recovery_metrics import RecoveryMetrics
from ...domain.services.visibility import VisibilityAnalyzer
from ...infrastructure.sampling.ensemble_sampler import EnsembleSampler
from ..dto.result_row import ResultRow
from .context import (
    ExperimentContext,
    INPUT_STREAM,
    NOISE_STREAM,
    SYSTEM_STREAM,
    collect_rows,
    sample_triples,
    simulate_with_truth,
)

logger = logging.getLogger(__name__)

RECOVERY_NOISE_COORDS = ("sigma", "method")
RECOVERY_K_COORDS = ("sigma", "k", "method")
DT_SWEEP_COORDS = ("dt", "method")
DIM_SWEEP_COORDS = ("n", "k", "method")

ERROR_METRICS = ("ree_full", "ree_vis")


def vis_not_worse(ree_vis: float, ree_full: float) -> float:
    """REE_vis ≤ REE_full 지시값. k = n 에서 두 값이 반올림 오차만큼 다를 수 있습니다."""
    return float(ree_vis <= ree_full * (1 + 1e-9) + 1e-12)


def _recovery_records(ctx: ExperimentContext) -> List[dict]:
    cfg = ctx.config
    triples = sample_triples(ctx, per_stratum=True)
    logger.info(f"복원 실험 삼중쌍 {len(triples)}개, 잡음 수준 {cfg.noise_levels}")

    def trial(triple):
        inputs = EnsembleSampler.pe_input(cfg.input_dim, cfg.horizon, seed=ctx.seed(INPUT_STREAM, triple.index))
        trajectory, truth = simulate_with_truth(
            triple.system, triple.x0, inputs, cfg.simulator, cfg.dt, ctx.hurwitz_margin
        )
        basis = VisibilityAnalyzer.visible_subspace(triple.system, triple.x0, rtol=ctx.rank_rtol).basis

        records = []
        for sigma in cfg.noise_levels:
            # 같은 잡음 실현을 σ 로만 확대합니다
            noisy = LtiDynamics.add_noise(trajectory, sigma, seed=ctx.seed(NOISE_STREAM, triple.index))
            for method in cfg.methods:
                fit = ctx.estimator_factory(method).fit(noisy, inputs)
                estimate = (fit.ad_hat, fit.bd_hat)
                ree_full = RecoveryMetrics.ree_full(truth, estimate)
                ree_vis = RecoveryMetrics.ree_vis(truth, estimate, basis)
                records.append({
                    "sigma": sigma,
                    "k": triple.k,
                    "method": method,
                    "ree_full": ree_full,
                    "ree_vis": ree_vis,
                    "vis_le_full": vis_not_worse(ree_vis, ree_full),
                })
        return records

    return [record for records in ctx.runner.map(trial, triples) for record in records]


def run_recovery_noise(ctx: ExperimentContext) -> List[ResultRow]:
    """잡음 수준 σ 별 REE_full / REE_vis (모든 가시 차원 합산)."""
    records = _recovery_records(ctx)
    return collect_rows(
        records, RECOVERY_NOISE_COORDS, ERROR_METRICS + ("vis_le_full",), mean_metrics=("vis_le_full",)
    )


def run_recovery_k(ctx: ExperimentContext) -> List[ResultRow]:
    """가시 차원 k 별 REE_full / REE_vis."""
    records = _recovery_records(ctx)
    return collect_rows(
        records, RECOVERY_K_COORDS, ERROR_METRICS + ("vis_le_full",), mean_metrics=("vis_le_full",)
    )


def run_dt_sweep(ctx: ExperimentContext) -> List[ResultRow]:
    """
    연속시간 쌍을 Δt 별로 ZOH 이산화해 DMDc 오차를 비교합니다.

    장구간 적분을 위해 A를 Hurwitz 쪽으로 이동시킨 뒤 이산화합니다.
    가시 부분공간은 이동과 이산화에 대해 불변이므로 연속 기저를 그대로 씁니다.
    """
    cfg = ctx.config
    triples = [t for t in sample_triples(ctx, per_stratum=False) if t.k < t.system.n]

    def trial(triple):
        continuous = LtiSystem(
            a_matrix=EnsembleSampler.hurwitz_shift(triple.system.a_matrix, ctx.hurwitz_margin),
            b_matrix=triple.system.b_matrix,
        )
        inputs = EnsembleSampler.pe_input(cfg.input_dim, cfg.horizon, seed=ctx.seed(INPUT_STREAM, triple.index))
        basis = VisibilityAnalyzer.visible_subspace(continuous, triple.x0, rtol=ctx.rank_rtol).basis

        records = []
        for dt in cfg.dts:
            discrete = LtiDynamics.discretize_zoh(continuous, dt)
            trajectory = LtiDynamics.simulate_discrete(discrete, Experiment(x0=triple.x0, inputs=inputs, dt=dt))
            truth = (discrete.ad_matrix, discrete.bd_matrix)

            discrete_k = VisibilityAnalyzer.visible_subspace(
                LtiSystem(a_matrix=discrete.ad_matrix, b_matrix=discrete.bd_matrix), triple.x0, rtol=ctx.rank_rtol
            ).k
            for method in cfg.methods:
                fit = ctx.estimator_factory(method).fit(trajectory, inputs)
                estimate = (fit.ad_hat, fit.bd_hat)
                records.append({
                    "dt": dt,
                    "method": method,
                    "ree_full": RecoveryMetrics.ree_full(truth, estimate),
                    "ree_vis": RecoveryMetrics.ree_vis(truth, estimate, basis),
                    "visible_dim_match": float(discrete_k == triple.k),
                })
        return records

    records = [record for records in ctx.runner.map(trial, triples) for record in records]
    return collect_rows(
        records, DT_SWEEP_COORDS, ERROR_METRICS + ("visible_dim_match",), mean_metrics=("visible_dim_match",)
    )


def run_dim_sweep(ctx: ExperimentContext) -> List[ResultRow]:
    """
    가시 차원 k를 고정하고 상태 차원 n을 늘립니다.

    min_norm_full은 최소 노름 해가 낼 REE_full 예측값이고,
    hidden_fraction은 (n − k)/n 입니다.
    """
    cfg = ctx.config
    k = cfg.visible_dims[0]
    tasks = [(n, t) for n in cfg.dims for t in range(cfg.trials)]

    def trial(task):
        n, t = task
        visible = min(k, n)
        system, x0 = ctx.sampler.planted_visibility_system(
            n, visible, cfg.input_dim, seed=ctx.seed(SYSTEM_STREAM, n, visible, t), rho_target=ctx.rho_target
        )
        inputs = EnsembleSampler.pe_input(cfg.input_dim, cfg.horizon, seed=ctx.seed(INPUT_STREAM, n, t))
        trajectory, truth = simulate_with_truth(system, x0, inputs, cfg.simulator, cfg.dt, ctx.hurwitz_margin)
        basis = VisibilityAnalyzer.visible_subspace(system, x0, rtol=ctx.rank_rtol).basis

        records = []
        for method in cfg.methods:
            fit = ctx.estimator_factory(method).fit(trajectory, inputs)
            estimate = (fit.ad_hat, fit.bd_hat)
            records.append({
                "n": n,
                "k": visible,
                "method": method,
                "ree_full": RecoveryMetrics.ree_full(truth, estimate),
                "ree_vis": RecoveryMetrics.ree_vis(truth, estimate, basis),
                "min_norm_full": RecoveryMetrics.min_norm_full_error(truth, basis),
                "hidden_fraction": (n - visible) / n,
            })
        return records

    records = [record for records in ctx.runner.map(trial, tasks) for record in records]
    return collect_rows(
        records,
        DIM_SWEEP_COORDS,
        ERROR_METRICS + ("min_norm_full", "hidden_fraction"),
        mean_metrics=("hidden_fraction",),
    )
