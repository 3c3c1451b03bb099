"""Bohr-type majorant inequalities for maps subordinate to a class member."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import optimize

from . import series as ps
from .bounds import ClassProfile, Majorant
from .errors import DomainError
from .harmonic import HarmonicMap
from .series import PowerSeries

BRACKET = (1e-9, 1 - 1e-9)
MAX_ITER = 200
XTOL = 1e-15
SCHWARZ_RADIUS = 0.999
SCHWARZ_TOL = 1e-6
SCHWARZ_SAMPLES = 720
VERDICT_TOL = 1e-12


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive-at-this-order"


@dataclass(frozen=True)
class BohrReport:
    profile: str
    radius: float
    residual: float
    iterations: int
    closed_form_root: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "radius": self.radius,
            "residual": self.residual,
            "iterations": self.iterations,
            "closed_form_root": self.closed_form_root,
        }


@dataclass(frozen=True)
class BohrCheck:
    profile: str
    r: float
    majorant: float
    threshold: float
    tail: float
    verdict: Verdict

    @property
    def margin(self) -> float:
        return self.threshold - self.majorant

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "n_or_grid": self.r,
            "margin": self.margin,
            "verdict": self.verdict.value,
            "majorant": self.majorant,
            "threshold": self.threshold,
            "tail": self.tail,
        }


def _check_r(r: float):
    if not 0 <= r < 1:
        raise DomainError("radius must satisfy 0 <= r < 1")


def majorant_sum(f: HarmonicMap, r: float) -> float:
    """``sum_{n>=1} (|a_n| + |b_n|) r^n`` over the stored coefficients."""
    _check_r(r)
    n = np.arange(1, f.order + 1)
    w = r**n
    return float(np.sum(np.abs(f.h.coeffs[1:]) * w) + np.sum(np.abs(f.g.coeffs[1:]) * w))


def modulus_sum(p: PowerSeries, r: float) -> float:
    """``sum_{k>=0} |p_k| r^k``."""
    return float(np.sum(np.abs(p.coeffs) * r ** np.arange(p.order + 1)))


def check_schwarz(w: PowerSeries, radius=SCHWARZ_RADIUS, tol=SCHWARZ_TOL, samples=SCHWARZ_SAMPLES):
    """Numerical admissibility of ``w`` as a Schwarz function."""
    if w.coeffs[0] != 0:
        raise DomainError("composition requires ω(0)=0")
    t = 2 * np.pi * np.arange(samples) / samples
    peak = float(np.max(np.abs(ps.evaluate(w, radius * np.exp(1j * t)))))
    if peak > 1 + tol:
        raise DomainError(f"|ω| reaches {peak:.6g} > 1 on |z| = {radius}")


def subordinate(F: HarmonicMap, w: PowerSeries) -> HarmonicMap:
    """``F o w``: the subordinate map with Schwarz function ``w``."""
    check_schwarz(w)
    return HarmonicMap(ps.compose(F.h, w), ps.compose(F.g, w), "unconstrained")


def check_lemma_c(f: PowerSeries, F: PowerSeries, r: float, tol=VERDICT_TOL) -> bool:
    """Modulus-sum domination ``sum |a_k| r^k <= sum |b_k| r^k`` (guaranteed for ``r <= 1/3``)."""
    _check_r(r)
    lhs, rhs = modulus_sum(f, r), modulus_sum(F, r)
    return lhs <= rhs + tol * max(1.0, rhs)


def bohr_check(f: HarmonicMap, profile: ClassProfile, r: float, tol=VERDICT_TOL) -> BohrCheck:
    """Compare the majorant sum of ``f`` at ``r`` with the profile's covering distance."""
    _check_r(r)
    m = majorant_sum(f, r)
    tail = profile.tail(r, f.order)
    thr = profile.dist_lower
    slack = tol * max(1.0, thr)
    if m + tail <= thr + slack:
        verdict = Verdict.PASS
    elif m > thr + slack:
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.INCONCLUSIVE
    return BohrCheck(profile.name, r, m, thr, tail, verdict)


def bohr_polynomial_residual(r: float) -> float:
    return 3 * r**3 - 3 * r**2 + 9 * r - 1


def _closed_form_root(majorant: Majorant) -> float:
    if majorant is Majorant.KOEBE_TYPE:
        roots = np.roots([3, -3, 9, -1])
        real = [x.real for x in roots if abs(x.imag) < 1e-12 and 0 < x.real < 1]
        return float(real[0])
    if majorant is Majorant.CONSTANT_TYPE:
        return 1 / 3
    return 3 - 2 * math.sqrt(2)


def bohr_radius(profile: ClassProfile) -> BohrReport:
    """Largest ``r`` with ``majorant(r) <= dist_lower``, by bisection on the closed form."""
    if profile.majorant is None or profile.dist_lower is None:
        raise DomainError(f"profile {profile.name} has no majorant closed form")

    def excess(r):
        return profile.majorant_value(r) - profile.dist_lower

    root, info = optimize.bisect(excess, *BRACKET, xtol=XTOL, maxiter=MAX_ITER, full_output=True)
    return BohrReport(
        profile=profile.name,
        radius=float(root),
        residual=abs(excess(root)),
        iterations=info.iterations,
        closed_form_root=_closed_form_root(profile.majorant),
    )
