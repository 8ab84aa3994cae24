"""실험 결과 CSV / 메타데이터 저장."""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ...application.dto.result_row import ResultRow

logger = logging.getLogger(__name__)

VALUE_COLUMNS = ["metric", "value", "mean", "std", "median", "se", "trials"]
NOT_REPRODUCED_NOTE = "NODE estimator curves are not reproduced; only DMDc and STLSQ are evaluated."


def format_cell(value: Any) -> str:
    """float는 repr로 써서 같은 값이 항상 같은 문자열이 되도록 합니다."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


class ResultStorage:
    """
    긴 형식 CSV와 `<experiment>.meta.json` 을 출력 디렉토리에 씁니다.

    타임스탬프를 기록하지 않으므로 같은 설정은 같은 바이트를 냅니다.
    """

    def __init__(self, output_dir: str = "results", version: str = "0.0.0"):
        self.output_dir = Path(output_dir)
        self.version = version

    def write(
        self,
        name: str,
        rows: Sequence[ResultRow],
        coord_names: Sequence[str],
        config: Dict[str, Any],
        output_dir: Optional[str] = None,
    ) -> Path:
        """
        Args:
            name: 파일 이름 (확장자 제외)
            rows: 결과 행
            coord_names: CSV 좌표 열 순서
            config: 메타데이터에 남길 해석된 실행 설정

        Returns:
            CSV 파일 경로
        """
        directory = Path(output_dir) if output_dir else self.output_dir
        directory.mkdir(parents=True, exist_ok=True)

        csv_path = directory / f"{name}.csv"
        with csv_path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(list(coord_names) + VALUE_COLUMNS)
            for row in rows:
                writer.writerow(self._cells(row, coord_names))

        meta_path = directory / f"{name}.meta.json"
        meta = {
            "experiment": name,
            "version": self.version,
            "rows": len(rows),
            "columns": list(coord_names) + VALUE_COLUMNS,
            "median_rule": "lower",
            "note": NOT_REPRODUCED_NOTE,
            "config": config,
        }
        meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")

        logger.info(f"결과 저장 완료: {csv_path} ({len(rows)}행)")
        return csv_path

    @staticmethod
    def read(path: Path) -> List[Dict[str, str]]:
        with Path(path).open(newline="", encoding="utf-8") as handle:
            return list(csv.DictReader(handle))

    @staticmethod
    def _cells(row: ResultRow, coord_names: Iterable[str]) -> List[str]:
        coords = [format_cell(row.coords.get(name, "")) for name in coord_names]
        values = [row.metric, row.value, row.mean, row.std, row.median, row.se, row.trials]
        return coords + [format_cell(v) for v in values]
