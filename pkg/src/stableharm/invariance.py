"""Affine and linear invariance transforms of harmonic maps.

The linear-invariance transform composes with a disk automorphism.  Because
``phi(0) != 0`` in general, the truncated analytic and co-analytic parts are
treated as exact polynomials and substituted into the Taylor series of
``phi``; the low coefficients of the result are then exact for that
polynomial, and the remaining error is the truncation of ``h`` itself near
``|phi(0)|``, which grows like ``|a|^N`` (see :func:`recentering_tail_estimate`).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import series as ps
from .errors import DomainError
from .harmonic import HarmonicMap, Normalization
from .series import PowerSeries

MAX_SHIFT = 0.8
DENOMINATOR_TOL = 1e-12
CRITICAL_TOL = 1e-10


@dataclass(frozen=True)
class DiskAutomorphism:
    """``phi(z) = e^{i theta} (z + a) / (1 + conj(a) z)``."""

    a: complex = 0j
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "theta", float(self.theta))
        if abs(self.a) >= 1:
            raise DomainError(f"automorphism parameter needs |a| < 1 (got {abs(self.a):.6g})")

    @property
    def rotation(self) -> complex:
        return cmath.exp(1j * self.theta)

    def __call__(self, z):
        return auto_eval(self, z)

    def taylor(self, order: int) -> PowerSeries:
        """Taylor series of ``phi`` about 0 (constant term ``phi(0)``)."""
        a, u = self.a, self.rotation
        k = np.arange(1, order + 1)
        out = np.empty(order + 1, dtype=complex)
        out[0] = u * a
        out[1:] = u * (1 - abs(a) ** 2) * (-np.conj(a)) ** (k - 1)
        return PowerSeries(out)


def auto_eval(phi: DiskAutomorphism, z):
    z = np.asarray(z, dtype=complex)
    out = phi.rotation * (z + phi.a) / (1 + np.conj(phi.a) * z)
    return out[()] if out.ndim == 0 else out


def auto_derivative_at(phi: DiskAutomorphism, z):
    z = np.asarray(z, dtype=complex)
    out = phi.rotation * (1 - abs(phi.a) ** 2) / (1 + np.conj(phi.a) * z) ** 2
    return out[()] if out.ndim == 0 else out


def _check_shift(phi: DiskAutomorphism, max_shift: float):
    if abs(phi.a) > max_shift:
        raise DomainError(
            f"|a| = {abs(phi.a):.6g} exceeds the recentering limit {max_shift}; "
            "raise max_shift only with a correspondingly larger order"
        )


def recentering_tail_estimate(s: PowerSeries, center_modulus: float) -> float:
    """Heuristic size of the discarded terms of ``s'`` at ``|z| = center_modulus``.

    Assumes the stored coefficients keep growing at most polynomially, so the
    tail is dominated by ``N |c_N| rho^N / (1 - rho)^2``.
    """
    n = s.order
    rho = center_modulus
    last = float(np.max(np.abs(s.coeffs[max(1, n - 2):])))
    return n * last * rho**n / (1 - rho) ** 2


def affine_transform(f: HarmonicMap, c: complex) -> HarmonicMap:
    """``A_c(f) = (f + c conj(f)) / (1 + c g'(0))``.

    Expanding ``f + c conj(f) = (h + c g) + conj(g + conj(c) h)`` gives the
    new analytic part ``(h + c g)/D`` and co-analytic part ``(g + conj(c) h)/conj(D)``.
    """
    if abs(c) >= 1:
        raise DomainError(f"affine parameter needs |c| < 1 (got {abs(c):.6g})")
    d = 1 + c * f.b1
    if abs(d) < DENOMINATOR_TOL:
        raise DomainError("affine denominator 1 + c g'(0) vanishes")
    H = ps.scale(ps.add(f.h, ps.scale(f.g, c)), 1 / d)
    G = ps.scale(ps.add(f.g, ps.scale(f.h, np.conj(c))), 1 / np.conj(d))
    return HarmonicMap(H, G, Normalization.H)


def affine_inverse_parameter(b1: complex, c: complex) -> complex:
    """Parameter ``c'`` with ``A_{c'}(A_c(f)) = f`` when ``g'(0) = b1``."""
    beta = (c + np.conj(b1)) / (1 + b1 * c)
    return complex((np.conj(b1) - beta) / (1 - np.conj(beta) * np.conj(b1)))


def _recentered(s: PowerSeries, phi: DiskAutomorphism) -> PowerSeries:
    """``s(phi(z)) - s(phi(0))`` as a series with zero constant term."""
    out = ps.compose_shifted(s, phi.taylor(s.order))
    c = out.coeffs.copy()
    c[0] = 0
    return PowerSeries(c)


class _PointData(NamedTuple):
    dphi0: complex
    dh: complex
    dg: complex


def _point_data(f: HarmonicMap, phi: DiskAutomorphism) -> _PointData:
    w0 = complex(auto_eval(phi, 0))
    dh = complex(ps.evaluate(ps.derivative(f.h), w0))
    dg = complex(ps.evaluate(ps.derivative(f.g), w0))
    if abs(dh) < CRITICAL_TOL:
        raise DomainError("critical point at φ(0)")
    return _PointData(complex(auto_derivative_at(phi, 0)), dh, dg)


def koebe_transform(f: HarmonicMap, phi: DiskAutomorphism, max_shift: float = MAX_SHIFT) -> HarmonicMap:
    """``K_phi(f) = (f(phi(z)) - f(phi(0))) / (phi'(0) h'(phi(0)))``.

    The conjugated part is divided by the conjugate constant, so the new
    co-analytic series is ``(g o phi - g(phi(0))) / conj(phi'(0) h'(phi(0)))``.
    """
    _check_shift(phi, max_shift)
    d = _point_data(f, phi)
    lam = d.dphi0 * d.dh
    H = ps.scale(_recentered(f.h, phi), 1 / lam)
    G = ps.scale(_recentered(f.g, phi), 1 / np.conj(lam))
    return HarmonicMap(H, G, Normalization.H)


def koebe_transform_analytic(s: PowerSeries, phi: DiskAutomorphism, max_shift: float = MAX_SHIFT) -> PowerSeries:
    """The transform above for an analytic function (``g = 0``)."""
    _check_shift(phi, max_shift)
    w0 = complex(auto_eval(phi, 0))
    ds = complex(ps.evaluate(ps.derivative(s), w0))
    if abs(ds) < CRITICAL_TOL:
        raise DomainError("critical point at φ(0)")
    return ps.scale(_recentered(s, phi), 1 / (complex(auto_derivative_at(phi, 0)) * ds))


def b1_of_transform(f: HarmonicMap, phi: DiskAutomorphism) -> complex:
    """``B_1 = phi'(0) g'(phi(0)) / conj(phi'(0) h'(phi(0)))``."""
    d = _point_data(f, phi)
    return d.dphi0 * d.dg / np.conj(d.dphi0 * d.dh)


def decompose(F: HarmonicMap) -> tuple[HarmonicMap, complex]:
    """Split ``F`` in class H as ``F0 + conj(B1 F0)`` with ``F0`` in H0."""
    B1 = F.b1
    if abs(B1) >= 1:
        raise DomainError("|B_1| >= 1: map is not sense-preserving at the origin")
    s = 1 - abs(B1) ** 2
    H0 = ps.scale(ps.add(F.h, ps.scale(F.g, -np.conj(B1))), 1 / s)
    G0 = ps.scale(ps.add(F.g, ps.scale(F.h, -B1)), 1 / s)
    return HarmonicMap(H0, G0, Normalization.H0), B1


def rho_of_transform(f: HarmonicMap, eps: complex, phi: DiskAutomorphism) -> complex:
    """Slice parameter carried through the linear-invariance transform.

    ``rho = conj(phi'(0))/phi'(0) * (eps conj(h'(w)) + conj(g'(w))) / (h'(w) + eps g'(w))``
    with ``w = phi(0)``; then ``H0 + rho G0`` is the transform of ``h + eps g``.
    """
    d = _point_data(f, phi)
    den = d.dh + eps * d.dg
    if abs(den) < DENOMINATOR_TOL:
        raise DomainError("ρ denominator h'(φ(0)) + ε g'(φ(0)) vanishes")
    return complex(np.conj(d.dphi0) / d.dphi0 * (eps * np.conj(d.dh) + np.conj(d.dg)) / den)


def order_estimate(maps: Sequence[HarmonicMap]) -> float:
    """Largest ``|a_2|`` over a collection of maps."""
    if not maps:
        raise DomainError("order estimate needs at least one map")
    return max(abs(f.h.coeffs[2]) if f.order >= 2 else 0.0 for f in maps)
