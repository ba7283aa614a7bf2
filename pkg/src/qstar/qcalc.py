"""q-numbers, Jackson operators and the Ma-Minda generators xi_q / xi.

The classical class is a separate mode of :class:`QContext` rather than
``q = 1 - eps``: every q-formula switches to its exact ``q -> 1-`` limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import DEFAULT_ORDER, Series, geometric, mul, sine


class QContextError(ValueError):
    pass


@dataclass(frozen=True)
class QContext:
    """Deformation parameter; ``q=None`` is the classical (limit) mode."""

    q: float | None = None

    def __post_init__(self):
        if self.q is None:
            return
        q = float(self.q)
        if not math.isfinite(q) or not 0.0 < q < 1.0:
            raise QContextError(f"q must lie in the open interval (0, 1), got {self.q!r}")
        object.__setattr__(self, "q", q)

    @classmethod
    def classical(cls) -> QContext:
        return cls(None)

    @property
    def is_classical(self) -> bool:
        return self.q is None

    @property
    def label(self) -> str:
        return "classical" if self.q is None else f"q={self.q:g}"

    @property
    def qval(self) -> float:
        """q as a number, 1.0 in classical mode (only for limiting formulas)."""
        return 1.0 if self.q is None else self.q


CLASSICAL = QContext.classical()


def q_number(n: int, ctx: QContext) -> float:
    """``[n]_q = 1 + q + ... + q^(n-1)``; ``n`` in classical mode."""
    if n < 1:
        raise ValueError("q-numbers are defined for n >= 1")
    if ctx.is_classical:
        return float(n)
    q = ctx.q
    return -math.expm1(n * math.log(q)) / (1.0 - q)


def q_numbers(order: int, ctx: QContext) -> np.ndarray:
    """Array ``t`` with ``t[n] = [n]_q`` for ``1 <= n <= order`` and ``t[0] = 0``."""
    n = np.arange(order + 1, dtype=float)
    if ctx.is_classical:
        return n
    return -np.expm1(n * math.log(ctx.q)) / (1.0 - ctx.q)


def lambda_q(ctx: QContext) -> float:
    """``ln(q) / (q - 1)``, tending to 1 as ``q -> 1-``."""
    if ctx.is_classical:
        return 1.0
    q = ctx.q
    return math.log(q) / (q - 1.0)


def _shift_down(coeffs: np.ndarray) -> Series:
    if coeffs.size == 1:
        return Series(np.zeros(1))
    return Series(coeffs[1:])


def q_derivative(f: Series, ctx: QContext) -> Series:
    """Jackson derivative: ``a_n z^n -> [n]_q a_n z^(n-1)``. Order drops by one."""
    return _shift_down(f.coeffs * q_numbers(f.order, ctx))


def d_eta(f: Series, eta: complex) -> Series:
    """Generalised derivative ``(1/z) (f * z/((1 - eta z)(1 - z)))``.

    ``a_n`` is multiplied by ``1 + eta + ... + eta^(n-1)``; eta=1 gives ``f'``
    and real eta=q gives the Jackson derivative.
    """
    eta = complex(eta)
    if abs(eta) > 1.0:
        raise ValueError(f"|eta| must be at most 1, got {abs(eta)}")
    powers = eta ** np.arange(f.order + 1)
    mult = np.concatenate(([0.0], np.cumsum(powers)[:-1]))
    return _shift_down(f.coeffs * mult)


def jackson_integral_log(g: Series, ctx: QContext) -> Series:
    """Coefficientwise ``int_0^z (g(t) - g(0)) / t d_q t``: ``g_k -> g_k / [k]_q``."""
    t = q_numbers(g.order, ctx)
    out = np.zeros(g.order + 1, dtype=np.complex128)
    out[1:] = g.coeffs[1:] / t[1:]
    return Series(out)


def xi_coeffs(ctx: QContext, order: int = DEFAULT_ORDER) -> Series:
    """Series of ``1 + sin(qz) / (q (1 - qz))`` (or ``1 + sin z / (1 - z)``)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    q = ctx.qval
    s = sine(order, scale=q) / q
    return mul(s, geometric(order, ratio=q)) + 1.0


def xi_eval(ctx: QContext, z):
    """Closed-form value of xi_q (classical: xi). Raises at the pole ``z = 1/q``."""
    q = ctx.qval
    z = np.asarray(z, dtype=np.complex128)
    den = q * (1.0 - q * z)
    if np.any(den == 0):
        raise ZeroDivisionError(f"xi has a pole at z = {1.0 / q}")
    out = 1.0 + np.sin(q * z) / den
    return complex(out) if out.ndim == 0 else out


def xi_derivative_eval(ctx: QContext, z):
    """Closed-form derivative of xi_q."""
    q = ctx.qval
    z = np.asarray(z, dtype=np.complex128)
    u = 1.0 - q * z
    out = (q * np.cos(q * z) * u + q * np.sin(q * z)) / (q * u * u)
    return complex(out) if out.ndim == 0 else out
