"""Coefficient, growth, covering and distortion bounds, with grid verifiers.

Bound formulas are pure functions of ``(alpha, |b1|, r)``.  The verifiers
evaluate truncated series, so each comparison is relaxed by a relative
tolerance plus an estimate of the discarded series tail; a point only counts
as a violation when it exceeds both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import series as ps
from .errors import DomainError
from .grid import DEFAULT_GRID, GridSpec
from .harmonic import HarmonicMap, Normalization, check_normalization
from .series import PowerSeries

REL_TOL = 1e-9


class Majorant(str, Enum):
    """Closed form of ``sum_{n>=1} c_n r^n`` for a profile's combined coefficient bound ``c_n``."""

    KOEBE_TYPE = "KOEBE_TYPE"  # c_n = (2n^2+1)/3
    HALFPLANE_TYPE = "HALFPLANE_TYPE"  # c_n = (n+1)/2 + (n-1)/2 = n
    LINEAR_TYPE = "LINEAR_TYPE"  # c_n = n
    CONSTANT_TYPE = "CONSTANT_TYPE"  # c_n = 1

    def closed_form(self, r):
        r = np.asarray(r, dtype=float)
        if self is Majorant.KOEBE_TYPE:
            return (r + r**3 / 3) / (1 - r) ** 3
        if self is Majorant.CONSTANT_TYPE:
            return r / (1 - r)
        return r / (1 - r) ** 2


class Variant(str, Enum):
    LEMMA_B = "LEMMA_B"
    STABLE_MIN = "STABLE_MIN"


@dataclass(frozen=True)
class ClassProfile:
    name: str
    analytic_bound: Callable[[np.ndarray], np.ndarray]
    coanalytic_bound: Callable[[np.ndarray], np.ndarray]
    combined_bound: Callable[[np.ndarray], np.ndarray]
    alpha_affine: float
    alpha_h0: float
    dist_lower: float
    majorant: Majorant
    description: str = ""

    def majorant_value(self, r: float) -> float:
        return float(self.majorant.closed_form(r))

    def tail(self, r: float, order: int) -> float:
        """``sum_{n>order} combined_bound(n) r^n``."""
        return _sum_tail(self.combined_bound, r, order)


def _sum_tail(bound, r: float, order: int, rel=1e-20) -> float:
    if r <= 0:
        return 0.0
    if r >= 1:
        return float("inf")
    # terms decay once n r^n turns over; stop well past that
    count = int(np.ceil(np.log(rel) / np.log(r))) + 64
    n = np.arange(order + 1, order + 1 + min(count, 10**6), dtype=float)
    return float(np.sum(bound(n) * r**n))


def _koebe_a(n):
    return (n + 1) * (2 * n + 1) / 6


def _koebe_b(n):
    return (n - 1) * (2 * n - 1) / 6


S_STAR = ClassProfile(
    name="S_STAR",
    analytic_bound=_koebe_a,
    coanalytic_bound=_koebe_b,
    combined_bound=lambda n: (2 * n**2 + 1) / 3,
    alpha_affine=3.0,
    alpha_h0=2.5,
    dist_lower=1 / 6,
    majorant=Majorant.KOEBE_TYPE,
    description="some slice h + eps g (|eps| <= 1) univalent",
)

C_STAR = ClassProfile(
    name="C_STAR",
    analytic_bound=lambda n: (n + 1) / 2,
    coanalytic_bound=lambda n: (n - 1) / 2,
    combined_bound=lambda n: np.asarray(n, dtype=float),
    alpha_affine=2.0,
    alpha_h0=1.5,
    dist_lower=1 / 4,
    majorant=Majorant.HALFPLANE_TYPE,
    description="some slice h + eps g (|eps| <= 1) convex",
)

# The two stable profiles are configuration: their combined bounds are chosen so
# the Bohr radii 3 - 2*sqrt(2) and 1/3 come out, and the extremal maps k and l
# attain them.
S_STABLE = ClassProfile(
    name="S_STABLE",
    analytic_bound=lambda n: np.asarray(n, dtype=float),
    coanalytic_bound=lambda n: np.asarray(n, dtype=float),
    combined_bound=lambda n: np.asarray(n, dtype=float),
    alpha_affine=2.0,
    alpha_h0=2.0,
    dist_lower=1 / 4,
    majorant=Majorant.LINEAR_TYPE,
    description="every slice h + eps g (|eps| = 1) univalent",
)

C_STABLE = ClassProfile(
    name="C_STABLE",
    analytic_bound=lambda n: np.ones_like(np.asarray(n, dtype=float)),
    coanalytic_bound=lambda n: np.ones_like(np.asarray(n, dtype=float)),
    combined_bound=lambda n: np.ones_like(np.asarray(n, dtype=float)),
    alpha_affine=1.0,
    alpha_h0=1.0,
    dist_lower=1 / 2,
    majorant=Majorant.CONSTANT_TYPE,
    description="every slice h + eps g (|eps| = 1) convex",
)

PROFILES = {p.name: p for p in (S_STAR, C_STAR, S_STABLE, C_STABLE)}


def get_profile(name: str) -> ClassProfile:
    try:
        return PROFILES[name.upper()]
    except KeyError:
        raise DomainError(f"unknown profile {name!r}; choose from {', '.join(PROFILES)}") from None


# ---------------------------------------------------------------------------
# coefficient checks


@dataclass
class CoefficientReport:
    profile: str
    upto: int
    rows: list = field(default_factory=list)  # (n, |a_n|, bound_a, |b_n|, bound_b)
    margin: float = float("inf")
    verdict: bool = True
    strict: bool = False

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "n_or_grid": self.upto,
            "margin": self.margin,
            "verdict": "pass" if self.verdict else "fail",
            "rows": [
                {"n": n, "a": a, "a_bound": ab, "b": b, "b_bound": bb} for n, a, ab, b, bb in self.rows
            ],
        }


def _coefficient_report(f: HarmonicMap, name, upto, bound_a, bound_b, strict, tol):
    if upto > f.order:
        raise DomainError(f"cannot check coefficients up to {upto}: map has order {f.order}")
    report = CoefficientReport(profile=name, upto=upto, strict=strict)
    for n in range(2, upto + 1):
        a, b = float(abs(f.h.coeffs[n])), float(abs(f.g.coeffs[n]))
        ba, bb = float(bound_a(n)), float(bound_b(n))
        report.rows.append((n, a, ba, b, bb))
        margin = min(ba - a, bb - b)
        report.margin = min(report.margin, margin)
        slack = tol * max(1.0, ba, bb)
        ok = (a < ba and b < bb) if strict else (a <= ba + slack and b <= bb + slack)
        report.verdict = report.verdict and ok
    return report


def check_coeff_bounds(f: HarmonicMap, profile: ClassProfile, upto: int, tol=REL_TOL) -> CoefficientReport:
    """``|a_n| <= analytic_bound(n)`` and ``|b_n| <= coanalytic_bound(n)`` for ``2 <= n <= upto``."""
    check_normalization(f.h, f.g, Normalization.H0)
    return _coefficient_report(f, profile.name, upto, profile.analytic_bound, profile.coanalytic_bound, False, tol)


def check_affine_coeff_bounds(F: HarmonicMap, which: str, upto: int) -> CoefficientReport:
    """Strict bounds for shears ``f + conj(b1 f)``: ``(2n^2+1)/3`` for 'S', ``n`` for 'C'."""
    check_normalization(F.h, F.g, Normalization.H)
    which = which.upper()
    if which == "S":
        bound = lambda n: (2 * n * n + 1) / 3  # noqa: E731
    elif which == "C":
        bound = lambda n: float(n)  # noqa: E731
    else:
        raise DomainError(f"affine coefficient family must be 'S' or 'C' (got {which!r})")
    return _coefficient_report(F, f"A({which})", upto, bound, bound, True, 0.0)


# ---------------------------------------------------------------------------
# bound formulas


def _check_r(r):
    if np.any(np.asarray(r) < 0) or np.any(np.asarray(r) >= 1):
        raise DomainError("radius must satisfy 0 <= r < 1")


def growth_interval(alpha: float, r: float) -> tuple[float, float]:
    """Lower and upper bounds for ``|f(z)|`` on ``|z| = r`` in a family of order ``alpha``."""
    if alpha < 1:
        raise DomainError("order alpha must be >= 1")
    _check_r(r)
    q = (1 - r) / (1 + r)
    return (1 - q**alpha) / (2 * alpha), (q ** (-alpha) - 1) / (2 * alpha)


def covering_radius(alpha: float) -> float:
    if alpha < 1:
        raise DomainError("order alpha must be >= 1")
    return 1 / (2 * alpha)


def jacobian_interval(alpha: float, b1_mod: float, r: float) -> tuple[float, float]:
    if not 0 <= b1_mod < 1:
        raise DomainError("|b1| must lie in [0, 1)")
    _check_r(r)
    s = 1 - b1_mod**2
    return (
        s * (1 - r) ** (2 * alpha - 2) / (1 + r) ** (2 * alpha + 2),
        s * (1 + r) ** (2 * alpha - 2) / (1 - r) ** (2 * alpha + 2),
    )


def derivative_bounds(alpha: float, b1_mod: float, r: float, variant=Variant.LEMMA_B) -> tuple[float, float]:
    """Upper bounds for ``|h'(z)|`` and ``|g'(z)|`` on ``|z| = r``.

    ``STABLE_MIN`` is only defined for ``alpha`` 2 (univalent slices) and 1
    (convex slices), where the analytic part is itself univalent resp. convex.
    """
    if not 0 <= b1_mod < 1:
        raise DomainError("|b1| must lie in [0, 1)")
    _check_r(r)
    variant = Variant(variant)
    if variant is Variant.LEMMA_B:
        common = (1 + r) ** (alpha - 1.5) / (1 - r) ** (alpha + 1.5)
        return (1 + r * b1_mod) * common, (r + b1_mod) * common
    if alpha == 2:
        h_bound = (1 + r) / (1 - r) ** 3
    elif alpha == 1:
        h_bound = 1 / (1 - r) ** 2
    else:
        raise DomainError("STABLE_MIN bounds exist only for alpha = 2 or alpha = 1")
    return h_bound, min(1.0, r + b1_mod) * h_bound


# ---------------------------------------------------------------------------
# grid verifiers


def coefficient_tail(s: PowerSeries, r: float, power: int = 3) -> float:
    """Estimate ``sum_{n>N} |c_n| r^n`` assuming ``|c_n| <= C n^power``.

    ``C`` is fitted on the upper half of the stored coefficients, which is
    conservative for the rational closed forms in the catalog.
    """
    n0 = max(1, s.order // 2)
    n = np.arange(n0, s.order + 1)
    mags = np.abs(s.coeffs[n0:])
    if not np.any(mags):
        return 0.0
    C = float(np.max(mags / n.astype(float) ** power))
    return C * _sum_tail(lambda m: m**power, r, s.order)


@dataclass
class GridReport:
    label: str
    grid: GridSpec
    checked: int = 0
    violations: list = field(default_factory=list)  # (z, quantity, value, bound)
    margin: float = float("inf")  # smallest relative slack
    max_tail: float = 0.0

    @property
    def verdict(self) -> bool:
        return not self.violations

    def record(self, z, quantity, value, bound, upper: bool, slack: float):
        self.checked += 1
        gap = (bound - value) if upper else (value - bound)
        self.margin = min(self.margin, gap / max(1.0, abs(bound)))
        if gap < -slack:
            self.violations.append((complex(z), quantity, float(value), float(bound)))

    def to_json(self) -> dict:
        return {
            "profile": self.label,
            "n_or_grid": self.grid.to_json(),
            "margin": self.margin,
            "verdict": "pass" if self.verdict else "fail",
            "checked": self.checked,
            "max_tail": self.max_tail,
            "violations": [
                {"z": [z.real, z.imag], "quantity": q, "value": v, "bound": b} for z, q, v, b in self.violations[:50]
            ],
        }


def _tail_for(f: HarmonicMap, r: float, profile: Optional[ClassProfile]) -> float:
    if profile is not None:
        return profile.tail(r, f.order)
    return coefficient_tail(f.h, r) + coefficient_tail(f.g, r)


def verify_growth(
    f: HarmonicMap,
    alpha: float,
    grid: GridSpec = DEFAULT_GRID,
    profile: Optional[ClassProfile] = None,
    tol: float = REL_TOL,
) -> GridReport:
    """Check the growth interval for ``|f(z)|`` at every grid point."""
    report = GridReport(label=profile.name if profile else f"alpha={alpha:g}", grid=grid)
    for r, row in zip(grid.radii(), grid.points()):
        lo, hi = growth_interval(alpha, r)
        tail = _tail_for(f, r, profile)
        report.max_tail = max(report.max_tail, tail)
        values = np.abs(f(row))
        for z, v in zip(row, values):
            report.record(z, "|f|", v, lo, upper=False, slack=tol * max(1.0, lo) + tail)
            report.record(z, "|f|", v, hi, upper=True, slack=tol * max(1.0, hi) + tail)
    return report


def verify_distortion(
    f: HarmonicMap,
    alpha: float,
    b1: complex,
    grid: GridSpec = DEFAULT_GRID,
    variant=Variant.LEMMA_B,
    tol: float = REL_TOL,
) -> GridReport:
    """Check Jacobian and derivative bounds pointwise.

    The Jacobian is always compared with the two-sided bound of order
    ``alpha``; ``variant`` only selects the derivative bounds.
    """
    variant = Variant(variant)
    b1_mod = abs(b1)
    report = GridReport(label=f"alpha={alpha:g},|b1|={b1_mod:g},{variant.value}", grid=grid)
    dh_s, dg_s = ps.derivative(f.h), ps.derivative(f.g)
    for r, row in zip(grid.radii(), grid.points()):
        j_lo, j_hi = jacobian_interval(alpha, b1_mod, r)
        h_b, g_b = derivative_bounds(alpha, b1_mod, r, variant)
        th, tg = coefficient_tail(dh_s, r), coefficient_tail(dg_s, r)
        dh, dg = np.abs(dh_s(row)), np.abs(dg_s(row))
        jac = dh**2 - dg**2
        tj = 2 * (dh * th + dg * tg) + th**2 + tg**2
        report.max_tail = max(report.max_tail, th, tg)
        for k, z in enumerate(row):
            report.record(z, "J", jac[k], j_lo, upper=False, slack=tol * max(1.0, j_lo) + tj[k])
            report.record(z, "J", jac[k], j_hi, upper=True, slack=tol * max(1.0, j_hi) + tj[k])
            report.record(z, "|h'|", dh[k], h_b, upper=True, slack=tol * max(1.0, h_b) + th)
            report.record(z, "|g'|", dg[k], g_b, upper=True, slack=tol * max(1.0, g_b) + tg)
    return report
