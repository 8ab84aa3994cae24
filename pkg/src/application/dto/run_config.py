"""실험 실행 설정 DTO."""
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ExperimentId(str, Enum):
    HEATMAP = "heatmap"
    X0_DENSITY = "x0_density"
    RECOVERY_NOISE = "recovery_noise"
    RECOVERY_K = "recovery_k"
    DT_SWEEP = "dt_sweep"
    DIM_SWEEP = "dim_sweep"
    EMPIRICAL_VIS = "empirical_vis"


class Simulator(str, Enum):
    """
    복원 실험의 데이터 생성 방식.

    discrete: 안정화된 A를 1스텝 사상으로 보고 참값은 (A, B)
    euler: 전진 오일러, 참값은 (I + A·dt, B·dt)
    zoh: 정확 이산화, 참값은 (A_d, B_d)
    """

    DISCRETE = "discrete"
    EULER = "euler"
    ZOH = "zoh"


EstimatorName = Literal["dmdc", "stlsq", "moesp"]
SamplingMode = Literal["stratified", "planted"]

_UNIT_GRID = [round(0.1 * i, 1) for i in range(11)]
_NOISE_GRID = [0.0, 1e-3, 1e-2, 1e-1, 0.5]

EXPERIMENT_DEFAULTS: Dict[ExperimentId, Dict[str, Any]] = {
    ExperimentId.HEATMAP: {
        "dims": list(range(2, 11)),
        "densities": _UNIT_GRID,
        "trials": 1000,
    },
    ExperimentId.X0_DENSITY: {
        "dims": list(range(2, 11)),
        "densities": _UNIT_GRID,
        "x0_densities": [0.25, 0.5, 0.75, 1.0],
        "trials": 20,
        "x0_samples": 100,
    },
    ExperimentId.RECOVERY_NOISE: {
        "dims": [10],
        "densities": [0.1],
        "visible_dims": list(range(5, 11)),
        "noise_levels": _NOISE_GRID,
        "trials": 45,
    },
    ExperimentId.RECOVERY_K: {
        "dims": [10],
        "densities": [0.1],
        "visible_dims": list(range(5, 11)),
        "noise_levels": [0.0],
        "trials": 45,
    },
    ExperimentId.DT_SWEEP: {
        "dims": [10],
        "densities": [0.1],
        "visible_dims": list(range(5, 10)),
        "dts": [0.05, 0.1, 0.25, 0.5, 1.0, 2.0],
        "trials": 50,
        "methods": ["dmdc"],
    },
    ExperimentId.DIM_SWEEP: {
        "dims": list(range(5, 101, 5)),
        "visible_dims": [5],
        "trials": 24,
        "sampling": "planted",
        "methods": ["dmdc"],
    },
    ExperimentId.EMPIRICAL_VIS: {
        "dims": [20],
        "visible_dims": [5],
        "noise_levels": _NOISE_GRID,
        "trials": 50,
        "sampling": "planted",
        "methods": ["dmdc"],
    },
}


class RunConfig(BaseModel):
    """
    실험 하나의 실행 설정.

    비워 둔 격자와 시행 수는 resolved() 에서 실험별 기본값으로 채웁니다.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment_id: ExperimentId
    dims: Optional[List[int]] = None
    densities: Optional[List[float]] = None
    x0_densities: Optional[List[float]] = None
    noise_levels: Optional[List[float]] = None
    dts: Optional[List[float]] = None
    visible_dims: Optional[List[int]] = None
    trials: Optional[int] = Field(default=None, ge=1)
    x0_samples: Optional[int] = Field(default=None, ge=1)
    input_dim: int = Field(default=2, ge=0)
    horizon: Optional[int] = Field(default=None, ge=2)
    dt: Optional[float] = Field(default=None, gt=0)
    density_window: Tuple[float, float] = (0.3, 0.7)
    sampling: SamplingMode = "stratified"
    simulator: Simulator = Simulator.DISCRETE
    methods: List[EstimatorName] = Field(default_factory=lambda: ["dmdc", "stlsq"], min_length=1)
    base_seed: Optional[int] = None
    workers: Optional[int] = Field(default=None, ge=1)
    output: Optional[str] = None

    @field_validator("dims", "visible_dims")
    @classmethod
    def _positive_ints(cls, values):
        if values is not None:
            if not values:
                raise ValueError("격자는 비어있을 수 없습니다")
            if any(v < 1 for v in values):
                raise ValueError(f"차원은 1 이상이어야 합니다: {values}")
        return values

    @field_validator("densities")
    @classmethod
    def _unit_interval(cls, values):
        if values is not None:
            if not values:
                raise ValueError("격자는 비어있을 수 없습니다")
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise ValueError(f"밀도는 [0, 1] 범위여야 합니다: {values}")
        return values

    @field_validator("x0_densities")
    @classmethod
    def _open_unit_interval(cls, values):
        if values is not None:
            if not values:
                raise ValueError("격자는 비어있을 수 없습니다")
            if any(not 0.0 < v <= 1.0 for v in values):
                raise ValueError(f"x0 밀도는 (0, 1] 범위여야 합니다: {values}")
        return values

    @field_validator("noise_levels")
    @classmethod
    def _nonnegative(cls, values):
        if values is not None:
            if not values:
                raise ValueError("격자는 비어있을 수 없습니다")
            if any(v < 0 for v in values):
                raise ValueError(f"잡음 수준은 0 이상이어야 합니다: {values}")
        return values

    @field_validator("dts")
    @classmethod
    def _positive(cls, values):
        if values is not None:
            if not values:
                raise ValueError("격자는 비어있을 수 없습니다")
            if any(v <= 0 for v in values):
                raise ValueError(f"Δt는 양수여야 합니다: {values}")
        return values

    @model_validator(mode="after")
    def _window_ordered(self):
        low, high = self.density_window
        if not 0.0 <= low <= high <= 1.0:
            raise ValueError(f"density_window가 잘못되었습니다: {self.density_window}")
        return self

    def resolved(self, base_seed: int, horizon: int, euler_dt: float) -> "RunConfig":
        """
        실험별 기본값과 전역 설정으로 빈 필드를 채운 사본을 반환합니다.

        명시적으로 지정한 값은 그대로 둡니다.
        """
        updates: Dict[str, Any] = {}
        for name, default in EXPERIMENT_DEFAULTS[self.experiment_id].items():
            if name not in self.model_fields_set:
                updates[name] = default
        if self.base_seed is None:
            updates["base_seed"] = base_seed
        if self.horizon is None:
            updates["horizon"] = horizon
        if self.dt is None:
            updates["dt"] = euler_dt
        return self.model_copy(update=updates)
