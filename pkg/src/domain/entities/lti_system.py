"""LTI 시스템, 실험, 궤적 엔티티."""
from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidInputError, DimensionMismatchError


def frozen_array(values, name: str, ndim: int) -> np.ndarray:
    """값을 읽기 전용 float64 배열로 변환하고 유한성을 검증합니다."""
    array = np.array(values, dtype=np.float64)
    if array.ndim != ndim:
        raise InvalidInputError(f"{name}은(는) {ndim}차원 배열이어야 합니다 (현재 형태: {array.shape})")
    if not np.all(np.isfinite(array)):
        raise InvalidInputError(f"{name}에 유한하지 않은 값이 있습니다")
    array.setflags(write=False)
    return array


def input_matrix(values, n: int) -> np.ndarray:
    """입력 행렬 B를 (n, m) 형태로 정규화합니다. m = 0 도 허용합니다."""
    if values is None:
        return frozen_array(np.zeros((n, 0)), "b_matrix", 2)
    array = np.array(values, dtype=np.float64)
    if array.size == 0:
        array = np.zeros((n, 0))
    elif array.ndim == 1:
        array = array.reshape(n, 1) if array.shape[0] == n else array
    return frozen_array(array, "b_matrix", 2)


@dataclass(frozen=True, eq=False)
class LtiSystem:
    """
    연속시간 LTI 시스템 엔티티 (A, B).

    ẋ = A x + B u 를 나타내는 불변 값 객체입니다.
    """

    a_matrix: np.ndarray
    b_matrix: np.ndarray

    def __post_init__(self):
        """행렬 형태와 유한성을 검증합니다."""
        a = frozen_array(self.a_matrix, "a_matrix", 2)
        if a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"a_matrix는 정방행렬이어야 합니다 (현재 형태: {a.shape})")
        b = input_matrix(self.b_matrix, a.shape[0])
        if b.shape[0] != a.shape[0]:
            raise DimensionMismatchError(
                f"b_matrix 행 수가 상태 차원과 다릅니다: {b.shape[0]} vs {a.shape[0]}"
            )
        object.__setattr__(self, "a_matrix", a)
        object.__setattr__(self, "b_matrix", b)

    @property
    def n(self) -> int:
        """상태 차원."""
        return self.a_matrix.shape[0]

    @property
    def m(self) -> int:
        """입력 차원."""
        return self.b_matrix.shape[1]


@dataclass(frozen=True, eq=False)
class DiscreteSystem:
    """이산시간 시스템 (A_d, B_d, Δt)."""

    ad_matrix: np.ndarray
    bd_matrix: np.ndarray
    dt: float

    def __post_init__(self):
        ad = frozen_array(self.ad_matrix, "ad_matrix", 2)
        if ad.shape[0] != ad.shape[1]:
            raise InvalidInputError(f"ad_matrix는 정방행렬이어야 합니다 (현재 형태: {ad.shape})")
        bd = input_matrix(self.bd_matrix, ad.shape[0])
        if bd.shape[0] != ad.shape[0]:
            raise DimensionMismatchError(
                f"bd_matrix 행 수가 상태 차원과 다릅니다: {bd.shape[0]} vs {ad.shape[0]}"
            )
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise InvalidInputError(f"dt는 양수여야 합니다: {self.dt}")
        object.__setattr__(self, "ad_matrix", ad)
        object.__setattr__(self, "bd_matrix", bd)
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def n(self) -> int:
        return self.ad_matrix.shape[0]

    @property
    def m(self) -> int:
        return self.bd_matrix.shape[1]


@dataclass(frozen=True, eq=False)
class Experiment:
    """
    단일 실험 e = (x₀, u).

    inputs는 (T, m) 형태의 구간별 상수 입력 시퀀스입니다.
    """

    x0: np.ndarray
    inputs: np.ndarray
    dt: float

    def __post_init__(self):
        x0 = frozen_array(self.x0, "x0", 1)
        inputs = np.array(self.inputs, dtype=np.float64)
        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        inputs = frozen_array(inputs, "inputs", 2)
        if inputs.shape[0] < 1:
            raise InvalidInputError("입력 시퀀스 길이 T는 1 이상이어야 합니다")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise InvalidInputError(f"dt는 양수여야 합니다: {self.dt}")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def horizon(self) -> int:
        """입력 샘플 수 T."""
        return self.inputs.shape[0]

    @property
    def m(self) -> int:
        return self.inputs.shape[1]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """관측된 상태 궤적 x[0..T]. states는 (T+1, n) 형태입니다."""

    states: np.ndarray
    dt: float

    def __post_init__(self):
        states = frozen_array(self.states, "states", 2)
        if states.shape[0] < 1:
            raise InvalidInputError("궤적은 비어있을 수 없습니다")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise InvalidInputError(f"dt는 양수여야 합니다: {self.dt}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def length(self) -> int:
        """샘플 수 (T+1)."""
        return self.states.shape[0]

    @property
    def times(self) -> np.ndarray:
        """샘플 시각 t_j = j·dt."""
        return np.arange(self.length) * self.dt
