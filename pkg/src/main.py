"""visilin 명령행 메인 진입점."""
import logging
import sys
from typing import List, Optional

from dependency_injector import providers

from .containers import Container
from .infrastructure.logger.setup import configure_logging
from .presentation.cli.commands import VisilinCommands
from .presentation.cli.parser import build_parser

logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None, container: Optional[Container] = None) -> int:
    """
    인자를 해석하고 하위 명령을 실행합니다.

    Returns:
        종료 코드 (0 성공, 2 입력/설정 오류, 3 수치 오류, 1 그 외)
    """
    args = build_parser().parse_args(argv)
    container = container or Container()

    settings = container.config()
    overrides = {}
    if args.log_level:
        overrides["log_level"] = args.log_level
    if args.log_format:
        overrides["log_format"] = args.log_format
    if overrides:
        settings = settings.model_copy(update=overrides)
        container.config.override(providers.Object(settings))

    configure_logging(settings)
    logger.debug(f"visilin {args.command} 시작 (environment={settings.environment})")

    return VisilinCommands(container).dispatch(args)


def run() -> None:
    """콘솔 스크립트 진입점."""
    sys.exit(main())


if __name__ == "__main__":
    run()
