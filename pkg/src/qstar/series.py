"""Truncated power series with complex coefficients.

A :class:`Series` holds the Taylor coefficients ``c_0 .. c_N`` of an analytic
germ at the origin. Every operation returns a new series truncated at the
same order ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

DEFAULT_ORDER = 16


class SeriesOrderError(ValueError):
    """Raised when two series of different order meet in strict mode."""


@dataclass(frozen=True, eq=False)
class Series:
    """Immutable truncated series ``sum_{k=0}^{N} c_k z^k``.

    ``truncated`` is set when the value came out of a non-strict binary
    operation on mismatched orders.
    """

    coeffs: np.ndarray
    truncated: bool = field(default=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least the constant term")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> Series:
        return cls(np.zeros(order + 1))

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> Series:
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> Series:
        """The series of ``z``."""
        c = np.zeros(order + 1, dtype=np.complex128)
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex], order: int | None = None) -> Series:
        """Build from a coefficient list, zero-padding or cutting to ``order``."""
        c = np.asarray(list(coeffs), dtype=np.complex128)
        if order is None:
            return cls(c)
        out = np.zeros(order + 1, dtype=np.complex128)
        n = min(order + 1, c.size)
        out[:n] = c[:n]
        return cls(out)

    def __getitem__(self, k: int) -> complex:
        return complex(self.coeffs[k])

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:
        return f"Series(order={self.order}, coeffs={np.array2string(self.coeffs, precision=6)})"

    def truncate(self, order: int) -> Series:
        return Series.from_coeffs(self.coeffs, order)

    def allclose(self, other: Series, atol: float = 1e-12) -> bool:
        return self.order == other.order and bool(np.allclose(self.coeffs, other.coeffs, rtol=0, atol=atol))

    def __add__(self, other):
        if isinstance(other, Series):
            return add(self, other)
        return Series(self.coeffs + _const_vector(other, self.order))

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Series):
            return add(self, -other)
        return Series(self.coeffs - _const_vector(other, self.order))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return Series(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return div(self, other)
        return Series(self.coeffs / complex(other))

    def __call__(self, z):
        return evaluate(self, z)


def _const_vector(value, order: int) -> np.ndarray:
    v = np.zeros(order + 1, dtype=np.complex128)
    v[0] = complex(value)
    return v


def _align(a: Series, b: Series, strict: bool) -> tuple[np.ndarray, np.ndarray, bool]:
    if a.order == b.order:
        return a.coeffs, b.coeffs, a.truncated or b.truncated
    if strict:
        raise SeriesOrderError(f"order mismatch: {a.order} vs {b.order}")
    n = min(a.order, b.order) + 1
    return a.coeffs[:n], b.coeffs[:n], True


def add(a: Series, b: Series, strict: bool = True) -> Series:
    x, y, flag = _align(a, b, strict)
    return Series(x + y, truncated=flag)


def mul(a: Series, b: Series, strict: bool = True) -> Series:
    """Cauchy product truncated at the common order."""
    x, y, flag = _align(a, b, strict)
    return Series(np.convolve(x, y)[: x.size], truncated=flag)


def hadamard(a: Series, b: Series, strict: bool = True) -> Series:
    """Coefficientwise (Hadamard) product, i.e. convolution of analytic functions."""
    x, y, flag = _align(a, b, strict)
    return Series(x * y, truncated=flag)


def div(a: Series, b: Series, strict: bool = True) -> Series:
    """Quotient ``a / b``; ``b`` must have a nonzero constant term."""
    x, y, flag = _align(a, b, strict)
    if y[0] == 0:
        raise ZeroDivisionError("divisor series has zero constant term")
    out = np.zeros_like(x)
    for n in range(x.size):
        out[n] = (x[n] - np.dot(y[1 : n + 1], out[:n][::-1])) / y[0]
    return Series(out, truncated=flag)


def compose(f: Series, w: Series, strict: bool = True) -> Series:
    """``f(w(z))`` for ``w(0) = 0``, by Horner's scheme on series."""
    if w.coeffs[0] != 0:
        raise ValueError("inner series must vanish at the origin")
    x, y, flag = _align(f, w, strict)
    n = x.size
    acc = np.zeros(n, dtype=np.complex128)
    acc[0] = x[-1]
    for c in x[-2::-1]:
        acc = np.convolve(acc, y)[:n]
        acc[0] += c
    return Series(acc, truncated=flag)


def derivative(a: Series) -> Series:
    """Formal derivative, keeping the order (top coefficient becomes 0)."""
    n = a.order
    out = np.zeros(n + 1, dtype=np.complex128)
    out[:n] = a.coeffs[1:] * np.arange(1, n + 1)
    return Series(out)


def exp(a: Series) -> Series:
    """``exp(a)`` via ``g' = a' g``; a nonzero constant term is folded out."""
    n = a.order
    c = a.coeffs
    g = np.zeros(n + 1, dtype=np.complex128)
    g[0] = 1.0
    k = np.arange(1, n + 1)
    ka = k * c[1:]
    for m in range(1, n + 1):
        g[m] = np.dot(ka[:m], g[:m][::-1]) / m
    return Series(g * np.exp(c[0]))


def log(a: Series) -> Series:
    """Principal ``log(a)``; needs ``a(0) != 0``."""
    if a.coeffs[0] == 0:
        raise ValueError("log needs a nonzero constant term")
    n = a.order
    d = div(derivative(a), a).coeffs
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = np.log(a.coeffs[0])
    out[1:] = d[:n] / np.arange(1, n + 1)
    return Series(out)


def evaluate(a: Series, z):
    """Horner evaluation of the truncated polynomial; ``z`` may be an array."""
    acc = np.zeros_like(np.asarray(z, dtype=np.complex128))
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    if acc.ndim == 0:
        return complex(acc)
    return acc


def geometric(order: int = DEFAULT_ORDER, ratio: complex = 1.0) -> Series:
    """``1 / (1 - ratio z)``."""
    return Series(np.asarray(ratio, dtype=np.complex128) ** np.arange(order + 1))


def sine(order: int = DEFAULT_ORDER, scale: float = 1.0) -> Series:
    """``sin(scale z)``. Tail at ``|z| <= 1`` is below ``|scale|^(N+1)/(N+1)!``."""
    out = np.zeros(order + 1, dtype=np.complex128)
    term = complex(scale)
    for k in range(1, order + 1, 2):
        out[k] = term
        term *= -scale * scale / ((k + 1) * (k + 2))
    return Series(out)
