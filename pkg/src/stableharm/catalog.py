"""Closed-form constructors for the named extremal functions.

Every rational closed form is expanded by series division so the result can
be compared against the explicit coefficient formulas, which are kept here as
independent functions.
"""

from __future__ import annotations

from . import series as ps
from .errors import DomainError
from .harmonic import HarmonicMap, Normalization
from .series import DEFAULT_ORDER, PowerSeries


def _over_one_minus_z(p: PowerSeries, power: int) -> PowerSeries:
    """``p / (1-z)^power`` as ``power`` successive divisions by ``1 - z``.

    One division at a time keeps rounding growth linear in the index; a single
    division by the expanded cube would amplify it quadratically.
    """
    one_minus_z = ps.polynomial([1, -1], p.order)
    for _ in range(power):
        p = ps.div(p, one_minus_z)
    return p


def koebe_k(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``k(z) = z/(1-z)^2``."""
    if order < 1:
        raise DomainError("koebe_k needs order >= 1")
    return _over_one_minus_z(ps.identity(order), 2)


def half_plane_l(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``l(z) = z/(1-z)``."""
    if order < 1:
        raise DomainError("half_plane_l needs order >= 1")
    return _over_one_minus_z(ps.identity(order), 1)


def harmonic_koebe_K(order: int = DEFAULT_ORDER) -> HarmonicMap:
    """The harmonic Koebe function.

    h = (z - z^2/2 + z^3/6)/(1-z)^3 and g = (z^2/2 + z^3/6)/(1-z)^3, whose
    coefficients are ``coeff_A(n)`` and ``coeff_B(n)``.
    """
    if order < 2:
        raise DomainError("harmonic_koebe_K needs order >= 2")
    h = _over_one_minus_z(ps.polynomial([0, 1, -1 / 2, 1 / 6], order), 3)
    g = _over_one_minus_z(ps.polynomial([0, 0, 1 / 2, 1 / 6], order), 3)
    return HarmonicMap(h, g, Normalization.H0)


def harmonic_half_plane_L(order: int = DEFAULT_ORDER) -> HarmonicMap:
    """The harmonic half-plane map: h = (z - z^2/2)/(1-z)^2, g = (-z^2/2)/(1-z)^2."""
    if order < 2:
        raise DomainError("harmonic_half_plane_L needs order >= 2")
    h = _over_one_minus_z(ps.polynomial([0, 1, -1 / 2], order), 2)
    g = _over_one_minus_z(ps.polynomial([0, 0, -1 / 2], order), 2)
    return HarmonicMap(h, g, Normalization.H0)


def mapping_M_gprime(order: int) -> PowerSeries:
    """``g'(z) = z(-1+z+z^2)(1+z) / (3(1-z)^3)`` for the map M."""
    # z(-1+z+z^2)(1+z) = -z + 2z^3 + z^4
    return _over_one_minus_z(ps.polynomial([0, -1 / 3, 0, 2 / 3, 1 / 3], order), 3)


def mapping_M(order: int = DEFAULT_ORDER) -> HarmonicMap:
    """``M = k + conj(g)`` with g recovered by integrating its rational derivative."""
    if order < 7:
        raise DomainError("mapping_M needs order >= 7 to carry b_7")
    g = ps.integrate(mapping_M_gprime(order - 1))
    return HarmonicMap(koebe_k(order), g, Normalization.H0)


def v_alpha(n: int, alpha: complex, order: int = DEFAULT_ORDER) -> HarmonicMap:
    """``V_alpha = l + conj(alpha z^n / (1-z))`` for n >= 3, 0 < |alpha| <= 1/(2n-1)."""
    if n < 3:
        raise DomainError(f"V_alpha needs n >= 3 (got {n})")
    if not 0 < abs(alpha) <= 1 / (2 * n - 1) * (1 + 1e-12):
        raise DomainError(
            f"V_alpha needs 0<|\\alpha|\\leq\\frac{{1}}{{2n-1}} = {1 / (2 * n - 1):.6g} (got |alpha| = {abs(alpha):.6g})"
        )
    if order < n:
        raise DomainError(f"V_alpha with n = {n} needs order >= {n}")
    g = _over_one_minus_z(ps.monomial(n, order, alpha), 1)
    return HarmonicMap(half_plane_l(order), g, Normalization.H0)


def coeff_A(n: int) -> float:
    if n < 1:
        raise DomainError("coefficient index must be >= 1")
    return (n + 1) * (2 * n + 1) / 6


def coeff_B(n: int) -> float:
    if n < 1:
        raise DomainError("coefficient index must be >= 1")
    return (n - 1) * (2 * n - 1) / 6


def phi_K(n: int, eps: complex) -> complex:
    """Coefficient ``n`` of ``K^eps = h + eps g``."""
    if n < 2:
        raise DomainError("phi_K is stated for n >= 2")
    return ((2 * n * n + 1) * (1 + eps) + 3 * n * (1 - eps)) / 6


def phi_L(n: int, eps: complex) -> complex:
    """Coefficient ``n`` of ``L^eps = h + eps g``."""
    if n < 2:
        raise DomainError("phi_L is stated for n >= 2")
    return (n * (1 - eps) + (1 + eps)) / 2


CATALOG = {
    "k": koebe_k,
    "l": half_plane_l,
    "K": harmonic_koebe_K,
    "L": harmonic_half_plane_L,
    "M": mapping_M,
}

