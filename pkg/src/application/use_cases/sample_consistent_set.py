"""실험 일관 집합 표본 추출 유스케이스."""
import logging
from dataclasses import dataclass
from typing import List, Optional

from ...domain.entities.lti_system import Experiment, LtiSystem
from ...domain.exceptions import InvalidInputError
from ...domain.services.consistent_set import ConsistentSetBuilder
from ...domain.services.visibility import VisibilityAnalyzer
from ...infrastructure.sampling.seeding import derive_seed
from ...infrastructure.storage.system_storage import SystemFileStorage

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConsistentSample:
    """일관 집합 표본과 그 자유도 정보."""

    members: List[LtiSystem]
    visible_dim: int
    n: int
    singleton: bool

    @property
    def degrees_of_freedom(self) -> int:
        return self.n * (self.n - self.visible_dim)


class SampleConsistentSetUseCase:
    """
    [A, B]_e 의 원소를 무작위로 뽑는 유스케이스.

    실험이 시스템 파일에 있으면 궤적 잔차가 허용오차 안인 표본만 반환합니다.
    """

    def __init__(self, storage: SystemFileStorage, rank_rtol: float = 1e-10, consistency_tol: float = 1e-8):
        self._storage = storage
        self._rank_rtol = rank_rtol
        self._consistency_tol = consistency_tol

    def execute(
        self,
        system_path: str,
        x0_path: Optional[str],
        samples: int,
        seed: int,
        scale: float = 1.0,
    ) -> ConsistentSample:
        """
        Raises:
            InvalidInputError: samples < 1 이거나 x0가 없는 경우
        """
        if samples < 1:
            raise InvalidInputError(f"samples는 1 이상이어야 합니다: {samples}")

        document = self._storage.load_document(system_path)
        system = document.to_system()
        x0 = self._storage.load_x0(x0_path) if x0_path else document.x0
        if x0 is None:
            raise InvalidInputError("x0가 지정되지 않았습니다 (--x0 또는 시스템 파일의 x0)")

        members = [
            ConsistentSetBuilder.sample_consistent(system, x0, scale, seed=derive_seed(seed, index), rtol=self._rank_rtol)
            for index in range(samples)
        ]

        if document.inputs is not None and document.dt is not None:
            experiment = Experiment(x0=x0, inputs=document.inputs, dt=document.dt)
            survivors = ConsistentSetBuilder.filter_consistent(system, members, [experiment], self._consistency_tol)
            if len(survivors) != len(members):
                logger.warning(f"일관 표본 {len(members) - len(survivors)}개가 잔차 허용오차를 넘어 제외했습니다")
            members = survivors

        k = VisibilityAnalyzer.visible_subspace(system, x0, rtol=self._rank_rtol).k
        logger.info(f"일관 집합 표본 {len(members)}/{samples}개 생성 (k={k}/{system.n})")
        return ConsistentSample(members=members, visible_dim=k, n=system.n, singleton=k == system.n)
