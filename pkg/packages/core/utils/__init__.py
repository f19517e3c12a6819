"""Utilities package."""

from .logger import get_logger, configure_logging, get_channel_logger
from .errors import (
    CavityError,
    ConfigurationError,
    DomainError,
    DimensionMismatchError,
    FockIndexError,
    InvalidStateError,
    NumericalError,
    TruncationError,
    IntegrationAccuracyError,
    SingularWeightError,
    NonConvergenceError,
    AliasingError,
)
from .numbers import ComplexNumber, parse_complex

__all__ = [
    "get_logger",
    "configure_logging",
    "get_channel_logger",
    "CavityError",
    "ConfigurationError",
    "DomainError",
    "DimensionMismatchError",
    "FockIndexError",
    "InvalidStateError",
    "NumericalError",
    "TruncationError",
    "IntegrationAccuracyError",
    "SingularWeightError",
    "NonConvergenceError",
    "AliasingError",
    "ComplexNumber",
    "parse_complex",
]
