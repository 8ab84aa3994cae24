"""파일 입출력 어댑터."""
from .system_storage import SystemFileStorage, SystemDocument
from .result_storage import ResultStorage

__all__ = ["SystemFileStorage", "SystemDocument", "ResultStorage"]
