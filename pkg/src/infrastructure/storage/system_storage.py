"""시스템, 궤적, 분석 결과의 JSON / CSV 파일 입출력."""
import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ...domain.entities.fit_result import FitResult
from ...domain.entities.lti_system import LtiSystem, Experiment, Trajectory
from ...domain.entities.reports import MarginReport
from ...domain.entities.subspace import Subspace
from ...domain.exceptions import InvalidInputError, ResourceNotFoundError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class SystemDocument(BaseModel):
    """{"A", "B", "x0", "u", "dt"} 형식의 시스템/실험 파일."""

    model_config = ConfigDict(populate_by_name=True)

    a_matrix: List[List[float]] = Field(alias="A")
    b_matrix: List[List[float]] = Field(default_factory=list, alias="B")
    x0: Optional[List[float]] = None
    inputs: Optional[List[List[float]]] = Field(default=None, alias="u")
    dt: Optional[float] = Field(default=None, gt=0)

    def to_system(self) -> LtiSystem:
        n = len(self.a_matrix)
        b_matrix = self.b_matrix if self.b_matrix else np.zeros((n, 0))
        return LtiSystem(a_matrix=self.a_matrix, b_matrix=b_matrix)

    def to_experiment(self) -> Optional[Experiment]:
        """x0, u, dt 가 모두 있을 때만 실험을 만듭니다."""
        if self.x0 is None or self.inputs is None or self.dt is None:
            return None
        return Experiment(x0=self.x0, inputs=self.inputs, dt=self.dt)

    @classmethod
    def from_system(
        cls,
        system: LtiSystem,
        experiment: Optional[Experiment] = None,
    ) -> "SystemDocument":
        return cls(
            A=system.a_matrix.tolist(),
            B=system.b_matrix.tolist(),
            x0=experiment.x0.tolist() if experiment else None,
            u=experiment.inputs.tolist() if experiment else None,
            dt=experiment.dt if experiment else None,
        )


class SystemFileStorage:
    """
    로컬 파일 시스템 어댑터.

    궤적 CSV 헤더는 t,x0,…,x{n−1}, 입력 CSV 헤더는 u0,…,u{m−1} 입니다.
    """

    def load_document(self, path: PathLike) -> SystemDocument:
        """
        시스템 JSON 파일을 읽습니다.

        Raises:
            ResourceNotFoundError: 파일이 없는 경우
            InvalidInputError: JSON 형식이나 필드가 잘못된 경우
        """
        payload = self._read_json(path)
        try:
            return SystemDocument.model_validate(payload)
        except ValidationError as e:
            raise InvalidInputError(f"시스템 파일 형식이 잘못되었습니다 ({path}): {e}")

    def load_system(self, path: PathLike) -> LtiSystem:
        return self.load_document(path).to_system()

    def load_x0(self, path: PathLike) -> np.ndarray:
        """[…] 또는 {"x0": […]} 형식의 초기 상태 파일을 읽습니다."""
        payload = self._read_json(path)
        if isinstance(payload, dict):
            payload = payload.get("x0")
        if not isinstance(payload, list):
            raise InvalidInputError(f"x0 파일 형식이 잘못되었습니다: {path}")
        try:
            return np.asarray(payload, dtype=np.float64).reshape(-1)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"x0 값을 숫자로 변환할 수 없습니다 ({path}): {e}")

    def load_trajectory(self, path: PathLike) -> Trajectory:
        """
        t,x0,… 헤더의 궤적 CSV를 읽습니다. dt는 첫 두 시각의 차이이며,
        샘플이 하나뿐이면 1.0 입니다.
        """
        table = self._read_csv(path, prefix="x")
        times, states = table[:, 0], table[:, 1:]
        dt = float(times[1] - times[0]) if times.size > 1 else 1.0
        return Trajectory(states=states, dt=dt)

    def load_inputs(self, path: PathLike) -> np.ndarray:
        return self._read_csv(path, prefix="u")

    def write_trajectory(self, path: PathLike, trajectory: Trajectory) -> Path:
        header = ",".join(["t"] + [f"x{i}" for i in range(trajectory.n)])
        table = np.column_stack([trajectory.times, trajectory.states])
        return self._write_csv(path, header, table)

    def write_inputs(self, path: PathLike, inputs: np.ndarray) -> Path:
        inputs = np.asarray(inputs, dtype=np.float64).reshape(len(inputs), -1)
        header = ",".join(f"u{i}" for i in range(inputs.shape[1]))
        return self._write_csv(path, header, inputs)

    def write_json(self, path: PathLike, payload: Any) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        logger.info(f"JSON 저장 완료: {path}")
        return path

    @staticmethod
    def system_payload(system: LtiSystem, experiment: Optional[Experiment] = None) -> Dict[str, Any]:
        return SystemDocument.from_system(system, experiment).model_dump(by_alias=True, exclude_none=True)

    @staticmethod
    def subspace_payload(subspace: Subspace) -> Dict[str, Any]:
        return {
            "basis": subspace.basis.tolist(),
            "k": subspace.k,
            "singular_values": subspace.singular_values.tolist(),
            "rtol": subspace.rtol,
        }

    @staticmethod
    def margin_payload(report: MarginReport) -> Dict[str, Any]:
        payload = asdict(report)
        # JSON은 inf를 표현하지 못하므로 문자열로 남깁니다
        if np.isinf(report.d_pbh):
            payload["d_pbh"] = "inf"
        return payload

    @staticmethod
    def fit_payload(fit: FitResult) -> Dict[str, Any]:
        return {
            "method": fit.method.value,
            "A_hat": fit.ad_hat.tolist(),
            "B_hat": fit.bd_hat.tolist(),
            "residual": fit.residual,
        }

    @staticmethod
    def _read_json(path: PathLike) -> Any:
        path = Path(path)
        if not path.is_file():
            raise ResourceNotFoundError(f"파일을 찾을 수 없음: {path}")
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"JSON 파싱 실패 ({path}): {e}")

    @staticmethod
    def _read_csv(path: PathLike, prefix: str) -> np.ndarray:
        path = Path(path)
        if not path.is_file():
            raise ResourceNotFoundError(f"파일을 찾을 수 없음: {path}")

        with path.open(encoding="utf-8") as handle:
            header = handle.readline().strip().split(",")
        if not header or not any(column.startswith(prefix) for column in header):
            raise InvalidInputError(f"CSV 헤더가 잘못되었습니다 ({path}): {header}")

        try:
            table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except ValueError as e:
            raise InvalidInputError(f"CSV 파싱 실패 ({path}): {e}")
        if table.shape[1] != len(header):
            raise InvalidInputError(f"CSV 열 수가 헤더와 다릅니다 ({path})")
        return table

    @staticmethod
    def _write_csv(path: PathLike, header: str, table: np.ndarray) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, table, delimiter=",", header=header, comments="", fmt="%.17g")
        logger.info(f"CSV 저장 완료: {path}")
        return path

