"""공용 테스트 픽스처."""
import numpy as np
import pytest

from src.domain.entities import LtiSystem
from src.infrastructure.sampling import EnsembleSampler


@pytest.fixture
def worked_system() -> LtiSystem:
    """A의 고유값이 1, 2, 3 이고 (A, B) 가 비가제어인 3차원 예제."""
    return LtiSystem(
        a_matrix=[[1.0, 1.0, 0.0], [0.0, 2.0, 1.0], [0.0, 0.0, 3.0]],
        b_matrix=[[1.0, 0.0], [2.0, 1.0], [0.0, 0.0]],
    )


@pytest.fixture
def good_x0() -> np.ndarray:
    """V(x₀) = ℝ³ 인 초기 상태."""
    return np.array([0.0, 0.0, 1.0])


@pytest.fixture
def bad_x0() -> np.ndarray:
    """V(x₀) = span(e₁, e₂) 인 초기 상태."""
    return np.array([1.0, -1.0, 0.0])


@pytest.fixture
def sampler() -> EnsembleSampler:
    return EnsembleSampler()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def planted(sampler):
    """(n, k, m, seed) → Hurwitz 쪽으로 이동시킨 심은 시스템과 x₀."""

    def build(n: int, k: int, m: int = 2, seed: int = 0):
        system, x0 = sampler.planted_visibility_system(n, k, m, seed=seed)
        shifted = LtiSystem(
            a_matrix=EnsembleSampler.hurwitz_shift(system.a_matrix, 0.05),
            b_matrix=system.b_matrix,
        )
        return shifted, x0

    return build

