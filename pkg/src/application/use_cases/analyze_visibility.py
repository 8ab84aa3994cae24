"""가시 부분공간 계산 유스케이스."""
import logging
from typing import Optional

from ...domain.entities.subspace import Subspace
from ...domain.exceptions import InvalidInputError
from ...domain.services.visibility import VisibilityAnalyzer
from ...infrastructure.storage.system_storage import SystemFileStorage

logger = logging.getLogger(__name__)


class AnalyzeVisibilityUseCase:
    """시스템 파일과 초기 상태로 V(x₀) 를 계산합니다."""

    def __init__(self, storage: SystemFileStorage, rank_rtol: float = 1e-10):
        self._storage = storage
        self._rank_rtol = rank_rtol

    def execute(self, system_path: str, x0_path: Optional[str] = None) -> Subspace:
        document = self._storage.load_document(system_path)
        x0 = self._storage.load_x0(x0_path) if x0_path else document.x0
        if x0 is None:
            raise InvalidInputError("x0가 지정되지 않았습니다 (--x0 또는 시스템 파일의 x0)")

        subspace = VisibilityAnalyzer.visible_subspace(document.to_system(), x0, rtol=self._rank_rtol)
        logger.info(f"가시 차원 k={subspace.k}/{subspace.n}")
        return subspace
