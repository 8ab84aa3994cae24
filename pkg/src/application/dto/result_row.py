"""집계 결과 행 DTO."""
from dataclasses import dataclass, field
from typing import Dict, Sequence, Union

import numpy as np

Coordinate = Union[int, float, str]


@dataclass(frozen=True)
class ResultRow:
    """
    셀 하나, 지표 하나의 집계 결과.

    value는 비율 지표면 평균, 오차 지표면 중앙값입니다.
    median은 하위 중앙값(짝수 개면 두 중앙값 중 작은 쪽)입니다.
    """

    coords: Dict[str, Coordinate]
    metric: str
    value: float
    mean: float
    std: float
    median: float
    se: float
    trials: int = field(default=1)

    @classmethod
    def aggregate(
        cls,
        coords: Dict[str, Coordinate],
        metric: str,
        samples: Sequence[float],
        use_mean: bool = False,
    ) -> "ResultRow":
        values = np.asarray(samples, dtype=np.float64)
        if values.size == 0:
            raise ValueError(f"지표 {metric}에 표본이 없습니다")

        mean = float(values.mean())
        std = float(values.std(ddof=1)) if values.size > 1 else 0.0
        median = float(np.quantile(values, 0.5, method="lower"))
        return cls(
            coords=dict(coords),
            metric=metric,
            value=mean if use_mean else median,
            mean=mean,
            std=std,
            median=median,
            se=std / np.sqrt(values.size),
            trials=int(values.size),
        )
