"""Grid-based univalence and convexity tests and the slice stability scans.

A PASS verdict only means no violation was found at the sampled resolution.
FAIL verdicts carry a witness: a coefficient breaking the Bieberbach (de
Branges) or convex-class coefficient bound, two grid points with the same
image, an image point covered twice by a circle image, or a self-crossing of
a circle image.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from . import series as ps
from .catalog import v_alpha
from .errors import DomainError
from .grid import GridSpec
from .harmonic import HarmonicMap, analytic_slice
from .series import PowerSeries

STABILITY_GRID = GridSpec(n_radii=12, r_max=0.8, n_angles=128)
COEFF_TOL = 1e-12
TURN_TOL = 1e-9
MAX_TEST_POINTS = 256
CIRCLE_OVERSAMPLE = 4
GOLDEN_RADIUS = (math.sqrt(5) - 1) / 2

Mapping = Union[PowerSeries, HarmonicMap]


class TriState(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    kind: str
    points: tuple = ()
    index: Optional[int] = None

    def describe(self) -> str:
        if self.kind == "coefficient":
            return f"coefficient n={self.index}"
        pts = ";".join(f"{p.real:.12g}{p.imag:+.12g}i" for p in self.points)
        return f"{self.kind} {pts}"


@dataclass(frozen=True)
class CheckResult:
    verdict: TriState
    witness: Optional[Witness] = None


def _values(s: Mapping, z):
    if isinstance(s, HarmonicMap):
        return s(z)
    return ps.evaluate(s, z)


def _normalized_coefficients(s: Mapping) -> Optional[np.ndarray]:
    """Coefficients of ``s / s'(0)`` for an analytic ``s`` with ``s(0) = 0``; else None."""
    if not isinstance(s, PowerSeries) or s.order < 2:
        return None
    c = s.coeffs
    if abs(c[0]) > COEFF_TOL or abs(c[1]) <= COEFF_TOL:
        return None
    return c / c[1]


def coefficient_violation(s: Mapping, bound) -> Optional[int]:
    """First index ``n >= 2`` with ``|a_n| > bound(n)``, or None."""
    c = _normalized_coefficients(s)
    if c is None:
        return None
    n = np.arange(2, c.size)
    b = np.asarray(bound(n), dtype=float)
    bad = np.nonzero(np.abs(c[2:]) > b * (1 + COEFF_TOL) + COEFF_TOL)[0]
    return int(n[bad[0]]) if bad.size else None


def _winding_numbers(curve: np.ndarray, targets: np.ndarray):
    """Winding of a closed polyline around each target; also flags under-resolved targets."""
    d = curve[None, :] - targets[:, None]
    steps = np.angle(np.roll(d, -1, axis=1) / d)
    wind = np.rint(steps.sum(axis=1) / (2 * np.pi)).astype(int)
    resolved = np.max(np.abs(steps), axis=1) < 2.5
    return wind, resolved


def _self_crossing(curve: np.ndarray, tol: float):
    """Indices ``(i, j)`` of two non-adjacent polyline edges that properly cross, or None."""
    p, q = curve, np.roll(curve, -1)
    m = curve.size
    mid, half = (p + q) / 2, np.abs(q - p) / 2
    # edges can only meet if their midpoints are within the sum of half-lengths
    tree = cKDTree(np.column_stack([mid.real, mid.imag]))
    pairs = tree.query_pairs(2 * float(np.max(half)) + 1e-300, output_type="ndarray")
    if pairs.size == 0:
        return None
    i, j = pairs[:, 0], pairs[:, 1]
    gap = np.abs(i - j)
    keep = (gap > 1) & (gap < m - 1) & (np.abs(mid[i] - mid[j]) <= half[i] + half[j])
    i, j = i[keep], j[keep]

    def orient(a, b, c):
        return ((b - a).conj() * (c - a)).imag

    eps = tol * max(float(np.max(np.abs(q - p))), 1e-300) ** 2
    d1, d2 = orient(p[i], q[i], p[j]), orient(p[i], q[i], q[j])
    d3, d4 = orient(p[j], q[j], p[i]), orient(p[j], q[j], q[i])
    cross = (d1 * d2 < -eps * eps) & (d3 * d4 < -eps * eps)
    if not np.any(cross):
        return None
    lo, hi = np.minimum(i[cross], j[cross]), np.maximum(i[cross], j[cross])
    k = np.lexsort((hi, lo))[0]
    return int(lo[k]), int(hi[k])


def univalence_check(s: Mapping, grid: GridSpec = STABILITY_GRID, coefficient_test: bool = True) -> CheckResult:
    """Tri-state univalence test of an analytic series or a harmonic map on the disk."""
    if coefficient_test:
        n = coefficient_violation(s, lambda n: n)
        if n is not None:
            return CheckResult(TriState.FAIL, Witness("coefficient", index=n))

    pts = grid.points()
    flat = pts.ravel()
    img = _values(s, flat)

    tree = cKDTree(np.column_stack([img.real, img.imag]))
    for i, j in sorted(tree.query_pairs(grid.tol)):
        if abs(flat[i] - flat[j]) > 10 * grid.tol:
            return CheckResult(TriState.FAIL, Witness("collision", (complex(flat[i]), complex(flat[j]))))

    m = CIRCLE_OVERSAMPLE * grid.n_angles
    t = 2 * np.pi * np.arange(m) / m
    unresolved = False
    for k, r in enumerate(grid.radii()):
        circle = r * np.exp(1j * t)
        curve = _values(s, circle)
        hit = _self_crossing(curve, TURN_TOL)
        if hit is not None:
            return CheckResult(TriState.FAIL, Witness("self-intersection", (complex(circle[hit[0]]), complex(circle[hit[1]]))))
        inner = pts[:k].ravel()
        if inner.size == 0:
            continue
        if inner.size > MAX_TEST_POINTS:
            inner = inner[np.linspace(0, inner.size - 1, MAX_TEST_POINTS).astype(int)]
        wind, resolved = _winding_numbers(curve, _values(s, inner))
        doubled = np.nonzero(resolved & (wind >= 2))[0]
        if doubled.size:
            z0 = complex(inner[doubled[0]])
            return CheckResult(TriState.FAIL, Witness("winding", (z0, complex(r))))
        if np.any(~resolved) or np.any(wind[resolved] != 1):
            unresolved = True
    return CheckResult(TriState.INCONCLUSIVE if unresolved else TriState.PASS)


@dataclass(frozen=True)
class ConvexityResult:
    verdict: TriState
    witness: Optional[Witness] = None
    weakest_radius: Optional[float] = None
    min_turn: float = float("inf")
    real_part_min: Optional[float] = None

    @property
    def real_part_condition(self) -> Optional[bool]:
        """``Re f(z)/z > 1/2`` on the grid (None when not applicable)."""
        return None if self.real_part_min is None else self.real_part_min > 0.5


def _polyline_turns(curve: np.ndarray):
    e = np.roll(curve, -1) - curve
    e_next = np.roll(e, -1)
    sin_turn = (e.conj() * e_next).imag / (np.abs(e) * np.abs(e_next))
    total = float(np.sum(np.angle(e_next / e)))
    return sin_turn, total


def convexity_check(
    s: Mapping,
    r: float,
    angles: int = 512,
    ladder: int = 8,
    coefficient_test: bool = True,
    tol: float = TURN_TOL,
) -> ConvexityResult:
    """Tri-state convexity test of the images of circles ``|z| = rho`` for ``rho`` up to ``r``.

    The polyline of each circle image must turn one way only, by a total of
    one full turn.  The result reports the worst radius of the ladder, plus
    the minimum of ``Re f(z)/z`` over the sampled disk for normalized
    analytic inputs.
    """
    if not 0 < r < 1:
        raise DomainError("convexity radius must satisfy 0 < r < 1")
    t = 2 * np.pi * np.arange(angles) / angles
    radii = r * np.arange(1, ladder + 1) / ladder

    real_min = None
    c = _normalized_coefficients(s)
    if c is not None:
        z = (radii[:, None] * np.exp(1j * t)[None, :]).ravel()
        real_min = float(np.min((ps.evaluate(PowerSeries(c), z) / z).real))

    if coefficient_test:
        n = coefficient_violation(s, lambda n: np.ones_like(n, dtype=float))
        if n is not None:
            return ConvexityResult(TriState.FAIL, Witness("coefficient", index=n), real_part_min=real_min)

    worst, worst_r, verdict, witness = float("inf"), None, TriState.PASS, None
    for rho in radii:
        circle = rho * np.exp(1j * t)
        sin_turn, total = _polyline_turns(_values(s, circle))
        k = int(np.argmin(sin_turn))
        if sin_turn[k] < worst:
            worst, worst_r = float(sin_turn[k]), float(rho)
        if sin_turn[k] < -tol or abs(total - 2 * np.pi) > 1e-6:
            verdict = TriState.FAIL
            witness = Witness("reflex-vertex", (complex(circle[(k + 1) % angles]),))
            break
        if sin_turn[k] < tol and verdict is TriState.PASS:
            verdict = TriState.INCONCLUSIVE
    return ConvexityResult(verdict, witness, worst_r, worst, real_min)


# ---------------------------------------------------------------------------
# stability scans


@dataclass(frozen=True)
class VerdictRow:
    eps: complex
    slice_univalent: TriState
    slice_convex: TriState
    witness: Optional[Witness] = None


@dataclass
class EpsilonVerdictTable:
    rows: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def eps_with(self, column: str, verdict: TriState = TriState.PASS) -> list:
        return [row.eps for row in self.rows if getattr(row, column) is verdict]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps_re", "eps_im", "univalent", "convex", "witness"])
        for row in self.rows:
            w.writerow(
                [
                    repr(float(row.eps.real)),
                    repr(float(row.eps.imag)),
                    row.slice_univalent.value,
                    row.slice_convex.value,
                    row.witness.describe() if row.witness else "",
                ]
            )
        return buf.getvalue()


def eps_circle(count: int) -> list:
    """``count`` equispaced points on the unit circle, starting at 1."""
    if count < 1:
        raise DomainError("need at least one ε sample")
    return [complex(np.exp(2j * np.pi * k / count)) for k in range(count)]


def eps_disk(count: int) -> list:
    """Polar samples strictly inside the disk: radii ``j/count`` times ``count`` angles, origin once."""
    if count < 1:
        raise DomainError("need at least one ε sample")
    out = [0j]
    for j in range(1, count):
        out.extend(j / count * e for e in eps_circle(count))
    return out


def stability_scan(
    f: HarmonicMap,
    eps_samples: Sequence[complex],
    grid: GridSpec = STABILITY_GRID,
    convex_angles: int = 512,
) -> EpsilonVerdictTable:
    table = EpsilonVerdictTable()
    for eps in eps_samples:
        if abs(eps) > 1 + 1e-12:
            raise DomainError(f"ε sample {eps} outside the closed disk")
        s = analytic_slice(f, eps)
        uni = univalence_check(s, grid)
        conv = convexity_check(s, grid.r_max, convex_angles)
        table.rows.append(VerdictRow(complex(eps), uni.verdict, conv.verdict, uni.witness or conv.witness))
    return table


# ---------------------------------------------------------------------------
# counterexample computations for M and V_alpha


def m_slice_a7(eps: complex) -> float:
    """``|a_7|`` of the slice ``M^eps``."""
    return abs(7 + (5 / 21) * eps)


class DerivativeTest(NamedTuple):
    lhs: float
    rhs: float
    violated: bool
    lhs_series: float


def m_slice_derivative_test(eps: complex, r: float, order: int = 128) -> DerivativeTest:
    """Compare ``|(M^eps)'(r)|`` with the Koebe distortion bound ``(1+r)/(1-r)^3``.

    ``lhs`` uses the factorized closed form, ``lhs_series`` the truncated
    series of the slice; they agree to high accuracy for ``r`` below the
    golden-ratio radius at the default order.
    """
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    from .catalog import mapping_M

    koebe = (1 + r) / (1 - r) ** 3
    lhs = abs(1 - r * (1 - r - r * r) * eps / 3) * koebe
    slice_ = analytic_slice(mapping_M(order), eps)
    lhs_series = float(abs(ps.evaluate(ps.derivative(slice_), r)))
    return DerivativeTest(float(lhs), float(koebe), bool(lhs > koebe), lhs_series)


def _v_alpha_point(n: int, alpha: complex, eps: complex, r: float) -> complex:
    if eps == 0:
        raise DomainError("limit formula requires ε ≠ 0")
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    # alpha eps z^(n-1) must be negative real; of the n-1 admissible angles take
    # the one farthest from the pole of 1/(1-z)
    k = np.arange(n - 1)
    angles = (math.pi - np.angle(alpha) - np.angle(eps) + 2 * math.pi * k) / (n - 1)
    return r * complex(np.exp(1j * angles[np.argmin(np.cos(angles))]))


def v_alpha_ratio(n: int, alpha: complex, eps: complex, r: float) -> float:
    """``Re (V_alpha)^eps(z0) / z0`` at the extremal angle, closed form.

    Tends to ``(1 - |alpha eps|)/2 < 1/2`` as ``r -> 1``, contradicting the
    convex-class condition ``Re f(z)/z > 1/2``.
    """
    z0 = _v_alpha_point(n, alpha, eps, r)
    c = math.cos(np.angle(z0))
    return (1 - abs(alpha * eps) * r ** (n - 1)) * (1 - r * c) / (1 + r * r - 2 * r * c)


def v_alpha_ratio_series(n: int, alpha: complex, eps: complex, r: float, order: int = 4096) -> float:
    """The same quantity from the truncated slice series; needs ``r**order`` negligible."""
    z0 = _v_alpha_point(n, alpha, eps, r)
    s = analytic_slice(v_alpha(n, alpha, order), eps)
    return float((ps.evaluate(s, z0) / z0).real)
