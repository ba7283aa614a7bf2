"""Coefficient functionals, Hankel/Toeplitz determinants and the printed bounds.

:func:`sharp_bound` returns the closed-form estimate exactly as published for
each functional and class. Several of those estimates are wrong; the oracle
module adjudicates them, this module only records them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .coeffmaps import CoeffJet
from .qcalc import QContext


class Kind(enum.Enum):
    A2 = "a2"
    A3 = "a3"
    A4 = "a4"
    FEKETE_SZEGO = "fs"
    H21 = "h21"
    H22 = "h22"
    T21 = "t21"
    T22 = "t22"
    T23 = "t23"
    T31 = "t31"
    T32 = "t32"
    KRUSKAL41 = "kruskal"
    ZALCMAN23 = "zalcman"


KIND_ORDER = list(Kind)

# Functionals that never touch a4, so the oracle may drop the beta dimension.
_A4_FREE = {Kind.A2, Kind.A3, Kind.FEKETE_SZEGO, Kind.H21, Kind.T21, Kind.T22, Kind.T31}

# Invariant under f(z) -> e^{-it} f(e^{it} z); Toeplitz determinants are not.
_ROTATION_INVARIANT = {
    Kind.A2, Kind.A3, Kind.A4, Kind.FEKETE_SZEGO, Kind.H21, Kind.H22, Kind.KRUSKAL41, Kind.ZALCMAN23,
}


@dataclass(frozen=True)
class FunctionalId:
    kind: Kind
    mu: complex | None = None

    def __post_init__(self):
        if self.kind is Kind.FEKETE_SZEGO:
            if self.mu is None:
                raise ValueError("the Fekete-Szego functional needs mu")
            object.__setattr__(self, "mu", complex(self.mu))
        elif self.mu is not None:
            raise ValueError(f"{self.kind.value} takes no parameter")

    @classmethod
    def parse(cls, tag: str, mu: complex | None = None) -> FunctionalId:
        kind = Kind(tag.lower())
        if kind is Kind.FEKETE_SZEGO and mu is None:
            mu = 1.0
        return cls(kind, mu if kind is Kind.FEKETE_SZEGO else None)

    @property
    def tag(self) -> str:
        return self.kind.value

    @property
    def uses_a4(self) -> bool:
        return self.kind not in _A4_FREE

    @property
    def rotation_invariant(self) -> bool:
        return self.kind in _ROTATION_INVARIANT

    def __str__(self) -> str:
        if self.mu is None:
            return self.tag
        return f"fs(mu={_fmt_complex(self.mu)})"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:g}" if z.imag == 0 else f"{z.real:g}{z.imag:+g}j"


def all_functionals(mu: complex = 1.0) -> list[FunctionalId]:
    return [FunctionalId(k, mu if k is Kind.FEKETE_SZEGO else None) for k in KIND_ORDER]


def _taylor(a, s: int, n: int, need: int) -> np.ndarray:
    a = np.asarray(getattr(a, "coeffs", a), dtype=np.complex128)
    if s < 1 or n < 1:
        raise ValueError("s and n must be positive")
    if a.size <= need:
        raise ValueError(f"need Taylor coefficients up to a_{need}, got up to a_{a.size - 1}")
    if n == 1 and a[1] != 1:
        raise ValueError("normalised functions have a1 = 1")
    return a


def hankel_det(a, s: int, n: int) -> complex:
    """``H_{s,n}``: determinant of ``[a_{n+i+j}]_{i,j<s}``.

    ``a`` holds Taylor coefficients indexed by power (``a[1] = 1``), either as a
    sequence or a :class:`~qstar.series.Series`.
    """
    a = _taylor(a, s, n, n + 2 * s - 2)
    i = np.arange(s)
    return complex(np.linalg.det(a[n + i[:, None] + i[None, :]]))


def toeplitz_det(a, s: int, n: int) -> complex:
    """``T_{s,n}``: determinant of the symmetric ``[a_{n+|i-j|}]_{i,j<s}``."""
    a = _taylor(a, s, n, n + s - 1)
    i = np.arange(s)
    return complex(np.linalg.det(a[n + np.abs(i[:, None] - i[None, :])]))


def functional_values(fid: FunctionalId, a2, a3, a4):
    """``|functional|`` on arrays of coefficients (explicit polynomial forms)."""
    k = fid.kind
    if k is Kind.A2:
        v = a2
    elif k is Kind.A3:
        v = a3
    elif k is Kind.A4:
        v = a4
    elif k is Kind.FEKETE_SZEGO:
        v = a3 - fid.mu * a2 * a2
    elif k is Kind.H21:
        v = a3 - a2 * a2
    elif k is Kind.H22:
        v = a2 * a4 - a3 * a3
    elif k is Kind.T21:
        v = 1.0 - a2 * a2
    elif k is Kind.T22:
        v = a2 * a2 - a3 * a3
    elif k is Kind.T23:
        v = a3 * a3 - a4 * a4
    elif k is Kind.T31:
        a22 = a2 * a2
        v = 1.0 - 2.0 * a22 + 2.0 * a22 * a3 - a3 * a3
    elif k is Kind.T32:
        v = (a2 - a4) * (a2 * a2 - 2.0 * a3 * a3 + a2 * a4)
    elif k is Kind.KRUSKAL41:
        v = a4 - a2**3
    elif k is Kind.ZALCMAN23:
        v = a2 * a3 - a4
    else:  # pragma: no cover
        raise ValueError(f"unknown functional {k}")
    return np.abs(v)


def evaluate_functional(fid: FunctionalId, c: CoeffJet) -> float:
    return float(functional_values(fid, complex(c.a2), complex(c.a3), complex(c.a4)))


@dataclass(frozen=True)
class BoundValue:
    """A printed estimate. ``printed`` is the raw expression, ``value`` its modulus."""

    value: float
    source: str
    printed: float
    caveat: str | None = None

    @property
    def printed_negative(self) -> bool:
        return self.printed < 0


def _fs_classical(mu: complex) -> float:
    return 0.5 * max(1.0, abs((2.0 * mu - 3.0) / 2.0))


def _fs_q(mu: complex, q: float) -> float:
    return max(1.0, abs((mu * (1 + q) - (1 + q + q * q)) / (2 * q))) / (q * (1 + q))


_CLASSICAL_PRINTED = {
    Kind.A2: 1.0,
    Kind.A3: 1.0,
    Kind.A4: 17.0 / 18.0,
    Kind.H21: 0.5,
    Kind.H22: 0.25,
    Kind.T21: 0.0,
    Kind.T22: 0.0,
    Kind.T23: 0.25,
    Kind.T31: 0.0,
    Kind.T32: 1.0 / 324.0,
    Kind.KRUSKAL41: 1.0 / 18.0,
    Kind.ZALCMAN23: 1.0 / 18.0,
}

_ZERO_CAVEAT = "limit of the q-estimate; contradicted by the oracle"


def q_printed(kind: Kind, q: float, mu: complex = 1.0) -> float:
    """Raw printed q-class expression (may be negative)."""
    q2, q3, q4, q5 = q * q, q**3, q**4, q**5
    s3 = 1 + q + q2
    if kind is Kind.A2:
        return 1.0 / q
    if kind is Kind.A3:
        return (1 + q2) / (q2 * (1 + q))
    if kind is Kind.A4:
        return (6 + 12 * q2 + 6 * q3 + 5 * q4 + 5 * q5) / (6 * q3 * (1 + q) * s3)
    if kind is Kind.FEKETE_SZEGO:
        return _fs_q(mu, q)
    if kind is Kind.H21:
        return 1.0 / (q * (1 + q))
    if kind in (Kind.H22, Kind.T23):
        return 1.0 / (q2 * (1 + q) ** 2)
    if kind is Kind.T21:
        return 1.0 - 1.0 / q2
    if kind is Kind.T22:
        return (1 + q2 - 2 * q3) / (q4 * (1 + q) ** 2)
    if kind is Kind.T31:
        return (1 - q) ** 4 * (1 + 4 * q + 5 * q2 + 4 * q3 + q4) / (q2 * (1 + q) ** 2)
    if kind is Kind.T32:
        m1 = 12 + 12 * q + 42 * q2 + 24 * q3 + 48 * q4 - 18 * q5 - 23 * q**6 - 51 * q**7 - 27 * q**8 - 11 * q**9
        return m1 * (6 + 6 * q2 - 6 * q3 - 7 * q4 - q5) / (36 * q**9 * (1 + q) ** 4 * s3**2)
    if kind is Kind.KRUSKAL41:
        return (12 - 5 * q3 - 5 * q4) / (6 * q2 * s3)
    if kind is Kind.ZALCMAN23:
        return (6 - 6 * q + 6 * q2 - 5 * q3) / (6 * q2 * s3)
    raise ValueError(f"unknown functional {kind}")  # pragma: no cover


def sharp_bound(fid: FunctionalId, ctx: QContext) -> BoundValue:
    """Printed closed-form estimate of ``fid`` for the class selected by ``ctx``."""
    kind = fid.kind
    if ctx.is_classical:
        source = f"classical.{fid.tag}"
        if kind is Kind.FEKETE_SZEGO:
            v = _fs_classical(fid.mu)
            inner = (2.0 * fid.mu - 3.0) / 2.0
            caveat = None
            if inner.imag != 0 or inner.real < 0:
                caveat = "printed max{1, (2mu-3)/2} read with modulus"
            return BoundValue(v, source, v, caveat)
        v = _CLASSICAL_PRINTED[kind]
        caveat = _ZERO_CAVEAT if kind in (Kind.T21, Kind.T22, Kind.T31) else None
        return BoundValue(v, source, v, caveat)
    source = f"q.{fid.tag}"
    raw = q_printed(kind, ctx.q, fid.mu if fid.mu is not None else 1.0)
    caveat = None
    if raw < 0:
        caveat = "printed bound negative; interpreted as its modulus"
    return BoundValue(abs(raw), source, raw, caveat)


@dataclass(frozen=True)
class LimitReport:
    fid: FunctionalId
    q_values: tuple[float, ...]
    q_bounds: tuple[float, ...]
    limit: float
    classical: float
    gap: float
    status: str
    note: str | None = None


LIMIT_TOL = 1e-6
FS_MU_PROBES = (-1.0, 0.0, 0.5, 1.0, 2.0, 3.0)


def _extrapolate(hs: np.ndarray, vs: np.ndarray) -> float:
    # linear Richardson on the two finest points, h = 1 - q
    h1, h2 = hs[-2], hs[-1]
    v1, v2 = vs[-2], vs[-1]
    return float(v2 - (v1 - v2) * h2 / (h1 - h2))


def classical_limit_report(fid: FunctionalId) -> LimitReport:
    """Evaluate the q-estimate at q = 1 - 10^-k (k = 2..6), extrapolate to q = 1
    and compare with the classical estimate.

    Signed printed values are extrapolated; agreement is judged on moduli and a
    sign flip is recorded in ``note``. For Fekete-Szego the comparison runs over
    several mu and the worst gap is reported.
    """
    hs = np.array([10.0**-k for k in range(2, 7)])
    qs = 1.0 - hs
    mus = FS_MU_PROBES if fid.kind is Kind.FEKETE_SZEGO else (None,)
    worst = None
    for mu in mus:
        vals = np.array([q_printed(fid.kind, q, mu if mu is not None else 1.0) for q in qs])
        limit = _extrapolate(hs, vals)
        if fid.kind is Kind.FEKETE_SZEGO:
            classical = _fs_classical(mu)
        else:
            classical = _CLASSICAL_PRINTED[fid.kind]
        gap = abs(abs(limit) - classical)
        entry = (gap, mu, vals, limit, classical)
        if worst is None or gap > worst[0]:
            worst = entry
    gap, mu, vals, limit, classical = worst
    status = "MATCH" if gap <= LIMIT_TOL * max(1.0, classical) else "MISMATCH"
    notes = []
    if limit < -LIMIT_TOL:
        notes.append("q-estimate tends to a negative value; compared in modulus")
    if fid.kind is Kind.FEKETE_SZEGO:
        notes.append(f"worst case over mu in {list(FS_MU_PROBES)} at mu={mu:g}")
    if status == "MISMATCH" and classical:
        notes.append(f"limit/classical ratio {abs(limit) / classical:.6g}")
    return LimitReport(
        fid=fid,
        q_values=tuple(float(q) for q in qs),
        q_bounds=tuple(float(v) for v in vals),
        limit=limit,
        classical=classical,
        gap=gap,
        status=status,
        note="; ".join(notes) or None,
    )


def fs_bound_minimiser(q: float) -> float:
    """mu at which the inner Fekete-Szego expression of the q-estimate vanishes."""
    return (1 + q + q * q) / (1 + q)
