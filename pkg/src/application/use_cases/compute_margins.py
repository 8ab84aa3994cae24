"""식별가능성 마진 계산 유스케이스."""
import logging
from typing import Optional

from ...domain.entities.lti_system import Experiment
from ...domain.entities.reports import MarginReport
from ...domain.exceptions import InvalidInputError
from ...domain.services.dynamics import LtiDynamics
from ...domain.services.identifiability import IdentifiabilityTester
from ...infrastructure.storage.system_storage import SystemFileStorage

logger = logging.getLogger(__name__)


class ComputeMarginsUseCase:
    """
    시스템 파일과 초기 상태로 MarginReport를 만드는 유스케이스.

    시스템 파일에 u와 dt가 함께 있으면 ZOH로 궤적을 만들어
    정보성 그래미안까지 보고합니다.
    """

    def __init__(
        self,
        storage: SystemFileStorage,
        pbh_eps: float = 1e-6,
        rank_rtol: float = 1e-10,
        gramian_horizon_steps: int = 10,
        gramian_dt: float = 0.1,
    ):
        self._storage = storage
        self._pbh_eps = pbh_eps
        self._rank_rtol = rank_rtol
        self._gramian_horizon_steps = gramian_horizon_steps
        self._gramian_dt = gramian_dt

    def execute(self, system_path: str, x0_path: Optional[str] = None, refine: bool = False) -> MarginReport:
        """
        Args:
            system_path: 시스템 JSON 경로
            x0_path: 초기 상태 JSON 경로 (없으면 시스템 파일의 x0)
            refine: 고유값 주변 복소 탐색으로 PBH 마진을 다듬을지 여부

        Returns:
            마진 보고서

        Raises:
            ResourceNotFoundError: 파일이 없는 경우
            InvalidInputError: x0가 어디에도 없는 경우
        """
        document = self._storage.load_document(system_path)
        system = document.to_system()
        x0 = self._storage.load_x0(x0_path) if x0_path else document.x0
        if x0 is None:
            raise InvalidInputError("x0가 지정되지 않았습니다 (--x0 또는 시스템 파일의 x0)")

        experiment = None
        trajectory = None
        if document.inputs is not None and document.dt is not None:
            experiment = Experiment(x0=x0, inputs=document.inputs, dt=document.dt)
            trajectory = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(system, experiment.dt), experiment)

        report = IdentifiabilityTester.margin_report(
            system,
            x0,
            eps=self._pbh_eps,
            rtol=self._rank_rtol,
            experiment=experiment,
            trajectory=trajectory,
            refine=refine,
            gramian_steps=self._gramian_horizon_steps,
            gramian_dt=self._gramian_dt,
        )
        logger.info(
            f"마진 계산 완료: k={report.visible_dim}/{report.n}, d_PBH={report.d_pbh:.3e}, "
            f"식별가능={report.identifiable}"
        )
        return report
