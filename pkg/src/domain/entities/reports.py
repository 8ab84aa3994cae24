"""식별가능성 검사 결과 엔티티."""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np


@dataclass(frozen=True)
class EigenAlignment:
    """좌고유벡터 정렬도 μ_i 와 그 최솟값."""

    mu_values: List[float]
    mu_min: float
    degenerate: bool = False


@dataclass(frozen=True, eq=False)
class GramianReport:
    """결합 회귀자 z = [ξ; u] 의 유한 구간 그래미안."""

    gramian: np.ndarray
    min_eig: float
    tolerance: float
    informative: bool


@dataclass(frozen=True)
class MarginReport:
    """
    실험 하나에 대한 식별가능성 마진 요약.

    identifiable ⇔ d_pbh > eps 입니다.
    """

    mu_values: List[float]
    mu_min: float
    d_pbh: float
    ctrb_rank: int
    visible_dim: int
    n: int
    eps: float
    identifiable: bool
    degenerate_spectrum: bool = False
    gramian_min_eig: Optional[float] = None
    informative: Optional[bool] = None
    augmented_gramian_min_eig: Optional[float] = None
