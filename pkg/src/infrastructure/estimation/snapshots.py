"""스냅샷 행렬 구성."""
from typing import Tuple

import numpy as np

from ...domain.entities.lti_system import Trajectory
from ...domain.exceptions import InvalidInputError, DimensionMismatchError


def snapshot_matrices(trajectory: Trajectory, inputs: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    X₀ = [x[0] … x[T−1]], X₁ = [x[1] … x[T]], U₀ = [u[0] … u[T−1]] 를 만듭니다.

    입력이 궤적보다 길면 앞쪽 T개만 씁니다.

    Returns:
        (X₀ n×T, X₁ n×T, U₀ m×T)
    """
    pairs = trajectory.length - 1
    if pairs < 1:
        raise InvalidInputError("스냅샷 쌍이 최소 1개 필요합니다")

    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim == 1:
        inputs = inputs.reshape(-1, 1)
    if inputs.ndim != 2 or inputs.shape[0] < pairs:
        raise DimensionMismatchError(
            f"입력 길이가 궤적과 맞지 않습니다: {inputs.shape} (필요 길이 {pairs})"
        )

    states = trajectory.states
    return states[:-1].T, states[1:].T, inputs[:pairs].T
