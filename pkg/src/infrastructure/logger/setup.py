"""로깅 설정."""
import logging
import sys

from pythonjsonlogger import jsonlogger

from ..config.settings import Settings

TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
JSON_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def configure_logging(settings: Settings) -> logging.Logger:
    """
    루트 로거를 설정합니다.

    stdout은 CLI 결과 출력용이므로 로그는 stderr로 보냅니다.
    log_format이 json이면 python-json-logger 포매터를 씁니다.
    """
    handler = logging.StreamHandler(sys.stderr)
    if settings.log_format.lower() == "json":
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(settings.log_level.upper())
    return root
