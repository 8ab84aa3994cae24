"""Domain entities."""
from .lti_system import LtiSystem, DiscreteSystem, Experiment, Trajectory
from .subspace import Subspace, BlockForm
from .reports import EigenAlignment, GramianReport, MarginReport
from .consistent_param import ConsistentParam
from .fit_result import FitResult, EstimationMethod
from .ensemble_spec import EnsembleSpec, EnsembleFamily

__all__ = [
    "LtiSystem",
    "DiscreteSystem",
    "Experiment",
    "Trajectory",
    "Subspace",
    "BlockForm",
    "EigenAlignment",
    "GramianReport",
    "MarginReport",
    "ConsistentParam",
    "FitResult",
    "EstimationMethod",
    "EnsembleSpec",
    "EnsembleFamily",
]
