"""Truncated-series computations for stable classes of planar harmonic mappings."""

from .errors import DomainError, NormalizationError
from .harmonic import HarmonicMap, Normalization
from .series import PowerSeries

__all__ = ["DomainError", "NormalizationError", "HarmonicMap", "Normalization", "PowerSeries"]
__version__ = "0.1.0"
