"""Harmonic maps ``f = h + conj(g)`` on the unit disk as pairs of truncated series."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import series as ps
from .errors import DomainError, NormalizationError
from .series import PowerSeries

NORMALIZATION_TOL = 1e-12
UNIT_TOL = 1e-12


class Normalization(str, Enum):
    """Which coefficient constraints a map is required to satisfy.

    ``H0``: h(0) = g(0) = g'(0) = 0, h'(0) = 1.  ``H``: the same without
    g'(0) = 0.  ``UNCONSTRAINED``: nothing is checked.
    """

    H0 = "H0"
    H = "H"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    h: PowerSeries
    g: PowerSeries
    normalization: Normalization = Normalization.UNCONSTRAINED

    def __post_init__(self):
        if self.h.order != self.g.order:
            raise DomainError(
                f"analytic and co-analytic parts must share one order ({self.h.order} != {self.g.order})"
            )
        object.__setattr__(self, "normalization", Normalization(self.normalization))
        check_normalization(self.h, self.g, self.normalization)

    @property
    def order(self) -> int:
        return self.h.order

    @property
    def b1(self) -> complex:
        """``f_zbar(0)``, the first co-analytic coefficient."""
        return complex(self.g.coeffs[1]) if self.order >= 1 else 0j

    def __call__(self, z):
        return eval_map(self, z)

    def __repr__(self):
        return f"HarmonicMap(order={self.order}, normalization={self.normalization.value})"

    def to_json(self) -> dict:
        return {"h": self.h.to_json(), "g": self.g.to_json(), "class": self.normalization.value}

    @classmethod
    def from_json(cls, data: dict) -> "HarmonicMap":
        return make(
            PowerSeries.from_json(data["h"]),
            PowerSeries.from_json(data["g"]),
            data.get("class", Normalization.UNCONSTRAINED.value),
        )


def check_normalization(h: PowerSeries, g: PowerSeries, tag, tol=NORMALIZATION_TOL):
    tag = Normalization(tag)
    if tag is Normalization.UNCONSTRAINED:
        return
    checks = [("h(0)", h.coeffs[0], 0), ("g(0)", g.coeffs[0], 0)]
    if h.order >= 1:
        checks.append(("h'(0)", h.coeffs[1], 1))
        if tag is Normalization.H0:
            checks.append(("g'(0)", g.coeffs[1], 0))
    for name, value, target in checks:
        if abs(value - target) > tol:
            raise NormalizationError(f"{name} = {complex(value):.6g} violates class {tag.value} (expected {target})")


def make(h: PowerSeries, g: PowerSeries, normalization=Normalization.UNCONSTRAINED) -> HarmonicMap:
    return HarmonicMap(h, g, Normalization(normalization))


def analytic(h: PowerSeries, normalization=Normalization.H0) -> HarmonicMap:
    """Embed an analytic function as a harmonic map with ``g = 0``."""
    return HarmonicMap(h, ps.zeros(h.order), normalization)


def identity_map(order: int = ps.DEFAULT_ORDER) -> HarmonicMap:
    return analytic(ps.identity(order))


def _check_closed_disk(eps: complex):
    if abs(eps) > 1 + UNIT_TOL:
        raise DomainError(f"ε outside closed disk (|ε| = {abs(eps):.6g})")


def epsilon_rotate(f: HarmonicMap, eps: complex) -> HarmonicMap:
    """``f_ε = h + conj(ε g)``."""
    _check_closed_disk(eps)
    return HarmonicMap(f.h, ps.scale(f.g, eps), f.normalization)


def analytic_slice(f: HarmonicMap, eps: complex) -> PowerSeries:
    """``f^ε = h + ε g`` as an analytic series."""
    _check_closed_disk(eps)
    return ps.add(f.h, ps.scale(f.g, eps))


def dilatation(f: HarmonicMap) -> PowerSeries:
    """Second complex dilatation ``g'/h'``."""
    dh = ps.derivative(f.h)
    if abs(dh.coeffs[0]) == 0:
        raise DomainError("h' vanishes at origin")
    return ps.div(ps.derivative(f.g), dh)


def jacobian_at(f: HarmonicMap, z):
    """``|h'(z)|^2 - |g'(z)|^2``; accepts scalars or arrays."""
    dh = ps.evaluate(ps.derivative(f.h), z)
    dg = ps.evaluate(ps.derivative(f.g), z)
    out = np.abs(dh) ** 2 - np.abs(dg) ** 2
    return float(out) if np.ndim(out) == 0 else out


def eval_map(f: HarmonicMap, z):
    return ps.evaluate(f.h, z) + np.conj(ps.evaluate(f.g, z))


def affine_shear(f: HarmonicMap, b1: complex) -> HarmonicMap:
    """``F = f + conj(b1 f)`` for ``f`` in H0; the result has ``G'(0) = b1``."""
    if abs(b1) >= 1:
        raise DomainError(f"shear parameter must satisfy |b1| < 1 (got {abs(b1):.6g})")
    check_normalization(f.h, f.g, Normalization.H0)
    H = ps.add(f.h, ps.scale(f.g, np.conj(b1)))
    G = ps.add(ps.scale(f.h, b1), f.g)
    return HarmonicMap(H, G, Normalization.H)
