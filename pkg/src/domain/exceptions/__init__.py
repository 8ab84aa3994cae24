"""Domain exceptions."""
from .base import (
    DomainException,
    InvalidInputError,
    DimensionMismatchError,
    InvalidConfigError,
    ResourceNotFoundError,
    NumericalDegeneracyError,
    EstimationError,
    InsufficientSamplesError,
    get_exit_code,
)

__all__ = [
    "DomainException",
    "InvalidInputError",
    "DimensionMismatchError",
    "InvalidConfigError",
    "ResourceNotFoundError",
    "NumericalDegeneracyError",
    "EstimationError",
    "InsufficientSamplesError",
    "get_exit_code",
]
