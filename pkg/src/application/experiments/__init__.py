"""실험 러너 레지스트리."""
from typing import Callable, Dict, List, NamedTuple, Tuple

from ..dto.result_row import ResultRow
from ..dto.run_config import ExperimentId
from .context import ExperimentContext
from .empirical_visibility import EMPIRICAL_VIS_COORDS, run_empirical_vis
from .recovery import (
    DIM_SWEEP_COORDS,
    DT_SWEEP_COORDS,
    RECOVERY_K_COORDS,
    RECOVERY_NOISE_COORDS,
    run_dim_sweep,
    run_dt_sweep,
    run_recovery_k,
    run_recovery_noise,
)
from .sparse_ensembles import HEATMAP_COORDS, X0_DENSITY_COORDS, run_heatmap, run_x0_density


class ExperimentEntry(NamedTuple):
    run: Callable[[ExperimentContext], List[ResultRow]]
    coords: Tuple[str, ...]


EXPERIMENTS: Dict[ExperimentId, ExperimentEntry] = {
    ExperimentId.HEATMAP: ExperimentEntry(run_heatmap, HEATMAP_COORDS),
    ExperimentId.X0_DENSITY: ExperimentEntry(run_x0_density, X0_DENSITY_COORDS),
    ExperimentId.RECOVERY_NOISE: ExperimentEntry(run_recovery_noise, RECOVERY_NOISE_COORDS),
    ExperimentId.RECOVERY_K: ExperimentEntry(run_recovery_k, RECOVERY_K_COORDS),
    ExperimentId.DT_SWEEP: ExperimentEntry(run_dt_sweep, DT_SWEEP_COORDS),
    ExperimentId.DIM_SWEEP: ExperimentEntry(run_dim_sweep, DIM_SWEEP_COORDS),
    ExperimentId.EMPIRICAL_VIS: ExperimentEntry(run_empirical_vis, EMPIRICAL_VIS_COORDS),
}

__all__ = ["EXPERIMENTS", "ExperimentContext", "ExperimentEntry"]
