"""시행별 시드 파생."""
import numpy as np


def derive_seed(base_seed: int, *indices: int) -> int:
    """
    (base_seed, 셀 인덱스, 시행 인덱스, …) 로부터 안정적인 시드를 만듭니다.

    numpy SeedSequence 해시를 쓰므로 실행 순서나 워커 수와 무관합니다.
    """
    sequence = np.random.SeedSequence([int(base_seed), *(int(i) for i in indices)])
    return int(sequence.generate_state(1)[0])
