"""병렬 시행 실행기."""
import logging
from concurrent import futures
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

TaskT = TypeVar("TaskT")
ResultT = TypeVar("ResultT")


class TrialRunner:
    """
    순수 함수 시행을 순서 보존 map으로 실행합니다.

    워커들은 결과를 값으로만 돌려주고 수집은 호출 스레드 하나가 합니다.
    결과 순서는 입력 순서와 같으므로 워커 수가 결과에 영향을 주지 않습니다.
    """

    def __init__(self, max_workers: int = 1):
        """
        Args:
            max_workers: ThreadPool 최대 워커 수 (1이면 직렬 실행)
        """
        self.max_workers = max(1, int(max_workers))

    def map(self, trial: Callable[[TaskT], ResultT], tasks: Iterable[TaskT]) -> List[ResultT]:
        tasks = list(tasks)
        if self.max_workers == 1 or len(tasks) <= 1:
            return [trial(task) for task in tasks]

        logger.debug(f"시행 {len(tasks)}개를 워커 {self.max_workers}개로 실행")
        with futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(executor.map(trial, tasks))
