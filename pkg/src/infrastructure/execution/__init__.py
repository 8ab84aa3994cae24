"""시행 실행기."""
from .trial_runner import TrialRunner

__all__ = ["TrialRunner"]
