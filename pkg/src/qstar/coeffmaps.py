"""Schwarz / Caratheodory parameterisations and the maps to (a2, a3, a4).

A Schwarz function ``w = b1 z + b2 z^2 + b3 z^3 + ...`` has its first three
coefficients parameterised by ``b1 in [0, 1]`` and two points of the closed
unit disk::

    b2 = alpha (1 - b1^2)
    b3 = (1 - b1^2) ((1 - |alpha|^2) beta - b1 alpha^2)

For a member of the class, ``z D f / f = xi_q(w)`` then fixes a2..a4, where
``D`` is the Jackson derivative (the ordinary derivative classically).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcalc import QContext

# Slack allowed on |alpha|, |beta|, b1 when they come out of float arithmetic.
DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class SchwarzJet:
    b1: complex
    alpha: complex
    beta: complex
    b2: complex
    b3: complex


@dataclass(frozen=True)
class CaratheodoryJet:
    c1: complex
    c2: complex


@dataclass(frozen=True)
class CoeffJet:
    a2: complex
    a3: complex
    a4: complex

    def taylor(self) -> list[complex]:
        """Taylor coefficients ``[a0, a1, a2, a3, a4] = [0, 1, a2, a3, a4]``."""
        return [0.0, 1.0, self.a2, self.a3, self.a4]


def schwarz_b2_b3(b1, alpha, beta):
    """Vectorised second and third Schwarz coefficients.

    ``b1`` may be complex here; the conjugate enters ``b3`` as in the
    general Schur-parameter form, which reduces to the real-``b1`` formula.
    """
    b1 = np.asarray(b1)
    alpha = np.asarray(alpha)
    s = 1.0 - np.abs(b1) ** 2
    b2 = alpha * s
    b3 = s * ((1.0 - np.abs(alpha) ** 2) * beta - np.conj(b1) * alpha**2)
    return b2, b3


def schwarz_jet(b1: float, alpha: complex, beta: complex) -> SchwarzJet:
    """Jet for ``b1 in [0, 1]`` and ``|alpha|, |beta| <= 1``."""
    if isinstance(b1, complex):
        if b1.imag != 0:
            raise ValueError("b1 must be real; use complex_schwarz_jet for rotated jets")
        b1 = b1.real
    b1 = float(b1)
    if not -DOMAIN_SLACK <= b1 <= 1.0 + DOMAIN_SLACK:
        raise ValueError(f"b1 must lie in [0, 1], got {b1}")
    b1 = min(max(b1, 0.0), 1.0)
    return _jet(b1, alpha, beta)


def complex_schwarz_jet(b1: complex, alpha: complex, beta: complex) -> SchwarzJet:
    """Jet for a complex ``b1`` with ``|b1| <= 1``."""
    if abs(b1) > 1.0 + DOMAIN_SLACK:
        raise ValueError(f"|b1| must be at most 1, got {abs(b1)}")
    return _jet(complex(b1), alpha, beta)


def _jet(b1, alpha, beta) -> SchwarzJet:
    alpha, beta = complex(alpha), complex(beta)
    if abs(alpha) > 1.0 + DOMAIN_SLACK or abs(beta) > 1.0 + DOMAIN_SLACK:
        raise ValueError("alpha and beta must lie in the closed unit disk")
    b2, b3 = schwarz_b2_b3(b1, alpha, beta)
    return SchwarzJet(b1=complex(b1), alpha=alpha, beta=beta, b2=complex(b2), b3=complex(b3))


def schwarz_slack(b1, b2, b3):
    """Slack in the three classical Schwarz coefficient inequalities.

    Returns ``(1 - |b1|, 1 - |b1|^2 - |b2|, 1 - |b1|^2 - |b2|^2/(1+|b1|) - |b3|)``;
    all three are nonnegative for a genuine Schwarz function.
    """
    r1, r2, r3 = np.abs(b1), np.abs(b2), np.abs(b3)
    return 1.0 - r1, 1.0 - r1**2 - r2, 1.0 - r1**2 - r2**2 / (1.0 + r1) - r3


def caratheodory_to_schwarz(c: CaratheodoryJet) -> tuple[complex, complex]:
    """``w = (p - 1)/(p + 1)``: ``b1 = c1/2``, ``b2 = (2 c2 - c1^2)/4``."""
    c1, c2 = complex(c.c1), complex(c.c2)
    if abs(c1) > 2.0 + DOMAIN_SLACK:
        raise ValueError(f"|c1| must be at most 2, got {abs(c1)}")
    return c1 / 2.0, (2.0 * c2 - c1 * c1) / 4.0


def coeff_arrays(ctx: QContext, b1, b2, b3):
    """Vectorised (a2, a3, a4) for either class."""
    if ctx.is_classical:
        a2 = b1
        a3 = b1**2 + b2 / 2.0
        a4 = (17.0 * b1**3 + 21.0 * b1 * b2 + 6.0 * b3) / 18.0
        return a2, a3, a4
    q = ctx.q
    t1, t2, t3 = a4_taus(q)
    a2 = b1 / q
    a3 = (b2 * q + b1**2 * (1.0 + q * q)) / (q * q * (1.0 + q))
    a4 = (b3 * t1 + b1 * b2 * t2 + b1**3 * t3) / (6.0 * q**3 * (1.0 + q) * (1.0 + q + q * q))
    return a2, a3, a4


def coeffs_classical(j: SchwarzJet) -> CoeffJet:
    return CoeffJet(*(complex(v) for v in coeff_arrays(QContext.classical(), j.b1, j.b2, j.b3)))


def coeffs_q(ctx: QContext, j: SchwarzJet) -> CoeffJet:
    """q-class map; delegates to :func:`coeffs_classical` in classical mode."""
    if ctx.is_classical:
        return coeffs_classical(j)
    return CoeffJet(*(complex(v) for v in coeff_arrays(ctx, j.b1, j.b2, j.b3)))


def a4_taus(q: float) -> tuple[float, float, float]:
    return (
        6.0 * q * q * (1.0 + q),
        6.0 * q * (2.0 + q + 2.0 * q**2 + 2.0 * q**3),
        6.0 + 12.0 * q**2 + 6.0 * q**3 + 5.0 * q**4 + 5.0 * q**5,
    )


@dataclass(frozen=True)
class TauTable:
    """Named polynomial constants in q used by the q-class coefficient algebra.

    ``tau1..tau3`` enter the a4 map; ``tau4..tau7`` expand ``a2 a4 - a3^2``;
    the remaining entries are the constants printed alongside the Toeplitz,
    Kruskal and Zalcman estimates, kept verbatim (two different constants
    share the names tau17/tau18, hence the suffixes).
    """

    q: float
    tau1: float
    tau2: float
    tau3: float
    tau4: float
    tau5: float
    tau6: float
    tau7: float
    tau8: float
    tau9: float
    tau10: float
    tau11: float
    tau13: float
    tau14: float
    tau15: float
    tau16: float
    tau17_kruskal: float
    tau18_kruskal: float
    tau17_zalcman: float
    tau18_zalcman: float
    tau19: float
    tau20: float
    M: float
    M1: float


def tau_table(q: float) -> TauTable:
    t1, t2, t3 = a4_taus(q)
    return TauTable(
        q=q,
        tau1=t1,
        tau2=t2,
        tau3=t3,
        tau4=6 * (1 + q) ** 2,
        tau5=6 * (1 + q + q**2),
        tau6=6 * (1 - q + 2 * q**2),
        tau7=6 - 6 * q + 7 * q**2 - 4 * q**3 + q**4,
        tau8=1 + q,
        tau9=6 * (2 + q * (1 + 2 * q * (1 + q))),
        tau10=6 + q**2 * (12 + q * (6 + 5 * q * (1 + q))),
        tau11=1 + q + q**2,
        tau13=1 + 2 * q + 2 * q**3 - q**4,
        tau14=6 * q * (1 + q),
        tau15=6 * (2 + q**2 + 2 * q**3),
        tau16=6 * (2 + 2 * q + 3 * q**2 + 2 * q**3),
        tau17_kruskal=24 + 12 * q + 18 * q**2 + 7 * q**3 - 5 * q**4,
        tau18_kruskal=24 + 6 * q + 12 * q**2 + 7 * q**3 - 5 * q**4,
        tau17_zalcman=12 - 12 * q + 18 * q**2 - 5 * q**3,
        tau18_zalcman=12 - 6 * q + 18 * q**2 - 5 * q,
        tau19=6 * (1 - 2 * q + 2 * q**2),
        tau20=6 * (1 + 2 * q**2),
        M=36 - 36 * q + 144 * q**2 - 144 * q**3 + 168 * q**4 - 180 * q**5 + 48 * q**6 - 84 * q**7 - 11 * q**8 - 11 * q**9,
        M1=12 + 12 * q + 42 * q**2 + 24 * q**3 + 48 * q**4 - 18 * q**5 - 23 * q**6 - 51 * q**7 - 27 * q**8 - 11 * q**9,
    )
