"""Truncated power series with complex binary64 coefficients.

A :class:`PowerSeries` of order ``N`` stores the Taylor coefficients of
degrees ``0..N``.  Arithmetic between series of different orders truncates
to the smaller order; coefficients are never zero-padded past what an
operand actually knows.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

DEFAULT_ORDER = 64
MAX_ORDER = 4096


class OutsideDiskWarning(UserWarning):
    """Emitted when a series is evaluated outside the closed unit disk."""


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise DomainError("a power series needs at least the constant coefficient")
        if c.size - 1 > MAX_ORDER:
            raise DomainError(f"order {c.size - 1} exceeds the maximum {MAX_ORDER}")
        if not np.all(np.isfinite(c)):
            raise DomainError("series coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.order > 5 else ""
        return f"PowerSeries(order={self.order}, [{head}{more}])"

    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(_coerce(other, self.order), -1))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), scale(self, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return div(self, other)
        return scale(self, 1 / complex(other))

    def __call__(self, z):
        return evaluate(self, z)

    def truncate(self, order: int) -> "PowerSeries":
        if order < 0:
            raise DomainError("truncation order must be non-negative")
        return PowerSeries(self.coeffs[: order + 1])

    def allclose(self, other: "PowerSeries", atol=1e-12, rtol=0.0) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], atol=atol, rtol=rtol))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "PowerSeries":
        coeffs = [complex(re, im) for re, im in data["coeffs"]]
        if "order" in data and int(data["order"]) != len(coeffs) - 1:
            raise DomainError(
                f"series JSON declares order {data['order']} but carries {len(coeffs)} coefficients"
            )
        return cls(coeffs)


def _coerce(x, order: int) -> PowerSeries:
    if isinstance(x, PowerSeries):
        return x
    return constant(x, order)


def series(coeffs: Iterable[complex]) -> PowerSeries:
    return PowerSeries(list(coeffs))


def zeros(order: int) -> PowerSeries:
    return PowerSeries(np.zeros(order + 1, dtype=complex))


def constant(c: complex, order: int) -> PowerSeries:
    out = np.zeros(order + 1, dtype=complex)
    out[0] = c
    return PowerSeries(out)


def identity(order: int) -> PowerSeries:
    """The series of ``z``."""
    if order < 1:
        raise DomainError("the identity series needs order >= 1")
    out = np.zeros(order + 1, dtype=complex)
    out[1] = 1
    return PowerSeries(out)


def monomial(k: int, order: int, c: complex = 1) -> PowerSeries:
    out = np.zeros(order + 1, dtype=complex)
    if k <= order:
        out[k] = c
    return PowerSeries(out)


def polynomial(coeffs: Sequence[complex], order: int) -> PowerSeries:
    """Pad (or cut) a coefficient list to a series of the given order."""
    out = np.zeros(order + 1, dtype=complex)
    n = min(len(coeffs), order + 1)
    out[:n] = np.asarray(coeffs, dtype=complex)[:n]
    return PowerSeries(out)


def scale(p: PowerSeries, c: complex) -> PowerSeries:
    return PowerSeries(p.coeffs * complex(c))


def add(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    n = min(p.order, q.order) + 1
    return PowerSeries(p.coeffs[:n] + q.coeffs[:n])


def mul(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the smaller order."""
    n = min(p.order, q.order) + 1
    return PowerSeries(np.convolve(p.coeffs[:n], q.coeffs[:n])[:n])


def derivative(p: PowerSeries) -> PowerSeries:
    if p.order < 1:
        raise DomainError("cannot differentiate constant-only truncation")
    k = np.arange(1, p.order + 1)
    return PowerSeries(k * p.coeffs[1:])


def integrate(p: PowerSeries) -> PowerSeries:
    """Antiderivative with zero constant term; the order grows by one."""
    out = np.zeros(p.order + 2, dtype=complex)
    out[1:] = p.coeffs / np.arange(1, p.order + 2)
    return PowerSeries(out)


def div(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Series quotient ``p/q`` by forward substitution."""
    if q.coeffs[0] == 0:
        raise DomainError("division by series with zero constant term")
    n = min(p.order, q.order) + 1
    a, b = p.coeffs[:n], q.coeffs[:n]
    r = np.zeros(n, dtype=complex)
    inv = 1 / b[0]
    for k in range(n):
        # b[1..k] reversed against r[0..k-1]
        acc = a[k] - np.dot(b[k:0:-1], r[:k]) if k else a[k]
        r[k] = acc * inv
    return PowerSeries(r)


def compose(p: PowerSeries, w: PowerSeries) -> PowerSeries:
    """Truncated coefficients of ``p(w(z))`` for an inner series with ``w(0) = 0``."""
    if w.coeffs[0] != 0:
        raise DomainError("composition requires ω(0)=0")
    return _horner_series(p, w)


def compose_shifted(p: PowerSeries, w: PowerSeries) -> PowerSeries:
    """Substitute a series with non-zero constant term into a polynomial.

    ``p`` is treated as the exact polynomial of its stored coefficients, so the
    low coefficients of the result are exact whatever ``w(0)`` is.
    """
    return _horner_series(p, w)


def _horner_series(p: PowerSeries, w: PowerSeries) -> PowerSeries:
    n = min(p.order, w.order) + 1
    wc = w.coeffs[:n]
    acc = np.zeros(n, dtype=complex)
    acc[0] = p.coeffs[p.order]
    for c in p.coeffs[p.order - 1 :: -1]:
        acc = np.convolve(acc, wc)[:n]
        acc[0] += c
    return PowerSeries(acc)


def evaluate(p: PowerSeries, z):
    """Horner evaluation of the truncated polynomial at a scalar or array ``z``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1):
        warnings.warn("series evaluated outside the closed unit disk", OutsideDiskWarning, stacklevel=2)
    acc = np.full(z.shape, p.coeffs[-1], dtype=complex)
    for c in p.coeffs[-2::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def tail_bound(magnitudes: Sequence[float], r: float, start: int) -> float:
    """``sum |c_n| r^n`` over the given magnitudes, indexed from ``start``."""
    m = np.asarray(magnitudes, dtype=float)
    return float(np.sum(m * r ** np.arange(start, start + m.size)))
