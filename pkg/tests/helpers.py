"""테스트 보조 함수."""
import numpy as np

from src.domain.entities import Experiment
from src.infrastructure.sampling import EnsembleSampler


def pe_experiment(x0: np.ndarray, m: int, horizon: int = 80, dt: float = 0.1, seed: int = 0) -> Experiment:
    """가우시안 PE 입력을 쓰는 실험."""
    return Experiment(x0=x0, inputs=EnsembleSampler.pe_input(m, horizon, seed), dt=dt)
