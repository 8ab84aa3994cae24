"""명령행 프레젠테이션 레이어."""
from .commands import VisilinCommands
from .parser import build_parser

__all__ = ["VisilinCommands", "build_parser"]
