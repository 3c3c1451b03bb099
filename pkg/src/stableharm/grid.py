from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class GridSpec:
    """Polar sample grid: geometric radii in ``[r_min, r_max]`` times equispaced angles."""

    n_radii: int = 24
    r_max: float = 0.95
    n_angles: int = 96
    tol: float = 1e-6
    r_min: float = 0.1

    def __post_init__(self):
        if not 0 < self.r_min <= self.r_max < 1:
            raise DomainError(f"grid radii need 0 < r_min <= r_max < 1 (got {self.r_min}, {self.r_max})")
        if self.n_radii < 8 or self.n_angles < 8:
            raise DomainError("grid counts must be at least 8")
        if self.tol <= 0:
            raise DomainError("grid tolerance must be positive")

    def radii(self) -> np.ndarray:
        return np.geomspace(self.r_min, self.r_max, self.n_radii)

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_angles) / self.n_angles

    def points(self) -> np.ndarray:
        """Array of shape ``(n_radii, n_angles)``; row ``i`` is the circle of radius ``radii()[i]``."""
        return self.radii()[:, None] * np.exp(1j * self.angles())[None, :]

    def to_json(self) -> dict:
        return {
            "n_radii": self.n_radii,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "n_angles": self.n_angles,
            "tol": self.tol,
        }


DEFAULT_GRID = GridSpec()
