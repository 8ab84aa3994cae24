"""visilin 하위 명령 처리기."""
import json
import logging
import sys
from typing import Any, Callable, Dict, Optional

from ...containers import Container
from ...domain.exceptions import DomainException, get_exit_code

logger = logging.getLogger(__name__)


class VisilinCommands:
    """
    하위 명령을 유스케이스로 연결하는 CLI 어댑터.

    도메인 예외는 에러 코드에 맞는 종료 코드로 바꿉니다 (4xxx → 2, 5xxx → 3).
    """

    def __init__(self, container: Container):
        self._container = container
        self._handlers: Dict[str, Callable] = {
            "margins": self.margins,
            "visible": self.visible,
            "consistent": self.consistent,
            "fit": self.fit,
            "run": self.run,
        }

    def dispatch(self, args) -> int:
        try:
            self._handlers[args.command](args)
            return 0
        except DomainException as e:
            logger.error(f"도메인 에러: [{e.code}] {e.message}")
            return get_exit_code(e.code)
        except Exception as e:
            logger.exception(f"예상치 못한 에러: {e}")
            return 1

    def margins(self, args) -> None:
        report = self._container.compute_margins_use_case().execute(args.system, args.x0, refine=args.refine)
        self._emit(self._container.system_storage().margin_payload(report), args.out)

    def visible(self, args) -> None:
        subspace = self._container.analyze_visibility_use_case().execute(args.system, args.x0)
        self._emit(self._container.system_storage().subspace_payload(subspace), args.out)

    def consistent(self, args) -> None:
        seed = args.seed if args.seed is not None else self._container.config().base_seed
        sample = self._container.sample_consistent_set_use_case().execute(
            args.system, args.x0, samples=args.samples, seed=seed, scale=args.scale
        )
        storage = self._container.system_storage()
        self._emit(
            {
                "visible_dim": sample.visible_dim,
                "n": sample.n,
                "singleton": sample.singleton,
                "degrees_of_freedom": sample.degrees_of_freedom,
                "members": [storage.system_payload(member) for member in sample.members],
            },
            args.out,
        )

    def fit(self, args) -> None:
        result = self._container.fit_system_use_case().execute(args.method, args.traj, args.inputs)
        self._emit(self._container.system_storage().fit_payload(result), args.out)

    def run(self, args) -> None:
        use_case = self._container.run_experiment_use_case()
        config = use_case.load_config(args.config)
        path = use_case.execute(config, output_dir=args.out, workers=args.workers, seed=args.seed)
        sys.stdout.write(f"{path}\n")

    def _emit(self, payload: Any, out: Optional[str]) -> None:
        if out:
            self._container.system_storage().write_json(out, payload)
        else:
            sys.stdout.write(json.dumps(payload, indent=2) + "\n")
