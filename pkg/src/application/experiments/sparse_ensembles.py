"""희소 앙상블 실험: 가제어 비율 히트맵과 x₀ 밀도별 식별가능 비율."""
import logging
from typing import List

import numpy as np

from ...domain.entities.ensemble_spec import EnsembleSpec, EnsembleFamily
from ...domain.services.identifiability import IdentifiabilityTester
from ..dto.result_row import ResultRow
from .context import ExperimentContext, SYSTEM_STREAM, X0_STREAM, collect_rows, value_code

logger = logging.getLogger(__name__)

HEATMAP_COORDS = ("n", "p")
X0_DENSITY_COORDS = ("p_x0",)


def run_heatmap(ctx: ExperimentContext) -> List[ResultRow]:
    """(n, p) 격자에서 ginibre_sparse 시스템의 가제어 비율."""
    cfg = ctx.config
    tasks = [(n, p, t) for n in cfg.dims for p in cfg.densities for t in range(cfg.trials)]

    def trial(task):
        n, p, t = task
        spec = EnsembleSpec(
            n=n,
            m=cfg.input_dim,
            density_p=p,
            family=EnsembleFamily.GINIBRE_SPARSE,
            seed=ctx.seed(SYSTEM_STREAM, n, value_code(p), t),
        )
        system = ctx.sampler.ginibre_sparse(spec)
        rank = IdentifiabilityTester.controllability_rank(system, rtol=ctx.rank_rtol)
        return {
            "n": n,
            "p": p,
            "frac_controllable": float(rank == n),
            "realized_density": ctx.sampler.realized_density(np.hstack([system.a_matrix, system.b_matrix])),
        }

    records = ctx.runner.map(trial, tasks)
    metrics = ("frac_controllable", "realized_density")
    return collect_rows(records, HEATMAP_COORDS, metrics, mean_metrics=metrics)


def run_x0_density(ctx: ExperimentContext) -> List[ResultRow]:
    """
    실현 밀도가 density_window 안에 있는 비가제어 시스템마다 x₀ 앙상블을 짝지어
    d_PBH > eps 인 삼중쌍의 비율을 p_x0 별로 집계합니다.

    가제어 시스템은 모든 x₀ 에서 식별가능하므로 집계에서 뺍니다.
    """
    cfg = ctx.config
    low, high = cfg.density_window
    tasks = [(n, p, t) for n in cfg.dims for p in cfg.densities for t in range(cfg.trials)]

    def trial(task):
        n, p, t = task
        spec = EnsembleSpec(
            n=n,
            m=cfg.input_dim,
            density_p=p,
            family=EnsembleFamily.GINIBRE_SPARSE,
            seed=ctx.seed(SYSTEM_STREAM, n, value_code(p), t),
        )
        system = ctx.sampler.ginibre_sparse(spec)
        density = ctx.sampler.realized_density(np.hstack([system.a_matrix, system.b_matrix]))
        if not low <= density <= high:
            return []
        if IdentifiabilityTester.controllability_rank(system, rtol=ctx.rank_rtol) == n:
            return []

        records = []
        for p_x0 in cfg.x0_densities:
            for s in range(cfg.x0_samples):
                x0 = ctx.sampler.sample_x0(n, p_x0, seed=ctx.seed(X0_STREAM, n, value_code(p), t, value_code(p_x0), s))
                margin = IdentifiabilityTester.pbh_margin(system, x0)
                records.append({"p_x0": p_x0, "frac_identifiable": float(margin > ctx.pbh_eps)})
        return records

    per_system = ctx.runner.map(trial, tasks)
    kept = sum(1 for records in per_system if records)
    logger.info(f"밀도·비가제어 필터 통과 시스템: {kept}/{len(tasks)}")

    records = [record for records in per_system for record in records]
    return collect_rows(records, X0_DENSITY_COORDS, ("frac_identifiable",), mean_metrics=("frac_identifiable",))
