"""로깅 설정."""
from .setup import configure_logging

__all__ = ["configure_logging"]
