"""Toolkit for 140 GHz propagation measurements: sliding-correlator sounder
simulation, link budgets, path-loss model fitting and penetration loss."""

from .errors import (
    BelowSensitivityError,
    ConfigurationError,
    DegenerateFitError,
    DomainError,
    MmpropError,
)

__version__ = "0.1.0"

__all__ = [
    "BelowSensitivityError",
    "ConfigurationError",
    "DegenerateFitError",
    "DomainError",
    "MmpropError",
]
