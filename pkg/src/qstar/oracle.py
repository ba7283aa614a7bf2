"""Brute-force maximisation of coefficient functionals over Schwarz jets.

The search space is the parameter box ``b1 in [0, 1]``, ``alpha`` in the
closed unit disk and ``beta`` on the unit circle. Restricting ``beta`` to the
circle loses nothing: every functional is a polynomial in ``b3``, hence in
``beta``, so its modulus peaks on ``|beta| = 1``. Every evaluated point is an
admissible jet, so the maximum found is a lower bound on the true supremum.

Search runs in two phases: a tensor grid, then a shrinking-box pattern search
started from the best few grid cells.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .coeffmaps import SchwarzJet, coeff_arrays, complex_schwarz_jet, schwarz_b2_b3, schwarz_jet
from .functionals import BoundValue, FunctionalId, functional_values, sharp_bound
from .qcalc import QContext

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OracleConfig:
    grid_b1: int = 64
    grid_radial: int = 32
    grid_angular: int = 64
    refine_iters: int = 200
    refine_shrink: float = 0.5
    top_k: int = 5
    seed: int = 0
    tol_confirm: float = 1e-3
    tol_sharp: float = 5e-3

    def __post_init__(self):
        for name in ("grid_b1", "grid_radial", "grid_angular"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be at least 2")
        if self.top_k < 1:
            raise ValueError("top_k must be at least 1")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be nonnegative")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError("refine_shrink must lie in (0, 1)")
        if not 0.0 < self.tol_confirm <= self.tol_sharp:
            raise ValueError("need 0 < tol_confirm <= tol_sharp")


class Status(str, enum.Enum):
    CONFIRMED = "CONFIRMED"
    DISCREPANT = "DISCREPANT"
    UNVERIFIED = "UNVERIFIED"


@dataclass(frozen=True)
class Witness:
    b1: complex
    alpha: complex
    beta: complex

    def jet(self) -> SchwarzJet:
        if self.b1.imag == 0:
            return schwarz_jet(self.b1.real, self.alpha, self.beta)
        return complex_schwarz_jet(self.b1, self.alpha, self.beta)


@dataclass(frozen=True)
class BoundReport:
    fid: FunctionalId
    ctx: QContext
    closed_form: BoundValue
    oracle_max: float
    witness: Witness
    abs_gap: float
    status: Status
    reason: str


# --- search engine ---------------------------------------------------------

# Search coordinates: (b1, |alpha|, arg alpha, arg beta[, arg b1]).

def _decode(u: np.ndarray):
    b1 = u[:, 0].astype(np.complex128)
    if u.shape[1] > 4:
        b1 = b1 * np.exp(1j * u[:, 4])
    alpha = u[:, 1] * np.exp(1j * u[:, 2])
    beta = np.exp(1j * u[:, 3])
    return b1, alpha, beta


def _project(u: np.ndarray) -> np.ndarray:
    u = u.copy()
    u[:, 0:2] = np.clip(u[:, 0:2], 0.0, 1.0)
    u[:, 2:] = np.mod(u[:, 2:], TWO_PI)
    return u


def jet_objective(fid: FunctionalId, ctx: QContext):
    """``(b1, alpha, beta) -> |functional|`` on broadcastable arrays."""

    def f(b1, alpha, beta):
        b2, b3 = schwarz_b2_b3(b1, alpha, beta)
        a2, a3, a4 = coeff_arrays(ctx, b1, b2, b3)
        return functional_values(fid, a2, a3, a4)

    return f


def _refine(objective, u0, f0, step0, cfg: OracleConfig, rng):
    u, best = u0.copy(), f0
    step = step0.copy()
    d = u.size
    eye = np.eye(d)
    for _ in range(cfg.refine_iters):
        cand = np.vstack([u + eye * step, u - eye * step, u + rng.uniform(-1.0, 1.0, (2 * d, d)) * step])
        cand = _project(cand)
        vals = objective(*_decode(cand))
        j = int(np.argmax(vals))
        if vals[j] > best:
            u, best = cand[j], float(vals[j])
        else:
            step = step * cfg.refine_shrink
            if np.all(step < 1e-15):
                break
    return u, best


def _pick_starts(slice_max: np.ndarray, k: int) -> list[int]:
    n = slice_max.size
    left = np.r_[-np.inf, slice_max[:-1]]
    right = np.r_[slice_max[1:], -np.inf]
    peaks = [i for i in np.argsort(-slice_max, kind="stable") if slice_max[i] >= left[i] and slice_max[i] >= right[i]]
    rest = [i for i in np.argsort(-slice_max, kind="stable") if i not in peaks]
    return (peaks + rest)[: min(k, n)]


def maximize_jets(objective, cfg: OracleConfig, use_beta: bool = True, complex_b1: bool = False):
    """Maximise ``objective(b1, alpha, beta)`` over admissible jets.

    Returns ``(maximum, witness)``. With ``complex_b1`` the argument of ``b1``
    is searched as well (on a grid of ``grid_angular // 4`` angles).
    """
    b1s = np.linspace(0.0, 1.0, cfg.grid_b1)
    rs = np.linspace(0.0, 1.0, cfg.grid_radial)
    ths = np.linspace(0.0, TWO_PI, cfg.grid_angular, endpoint=False)
    tbs = ths if use_beta else np.zeros(1)
    phis = np.linspace(0.0, TWO_PI, max(cfg.grid_angular // 4, 2), endpoint=False) if complex_b1 else np.zeros(1)
    alpha = (rs[:, None] * np.exp(1j * ths)[None, :])[:, :, None, None]
    beta = np.exp(1j * tbs)[None, None, :, None]
    rot = np.exp(1j * phis)[None, None, None, :]
    shape = (rs.size, ths.size, tbs.size, phis.size)

    slice_max = np.empty(b1s.size)
    slice_arg = np.empty(b1s.size, dtype=np.int64)
    for i, b in enumerate(b1s):
        vals = objective(b * rot, alpha, beta)
        vals = np.broadcast_to(vals, shape)
        j = int(np.argmax(vals))
        slice_arg[i] = j
        slice_max[i] = vals.flat[j]

    def coords(i: int) -> np.ndarray:
        ir, it, ib, ip = np.unravel_index(slice_arg[i], shape)
        u = [b1s[i], rs[ir], ths[it], tbs[ib]]
        if complex_b1:
            u.append(phis[ip])
        return np.array(u)

    steps = np.array([1.0 / (cfg.grid_b1 - 1), 1.0 / (cfg.grid_radial - 1), TWO_PI / cfg.grid_angular,
                      TWO_PI / cfg.grid_angular if use_beta else 0.0])
    if complex_b1:
        steps = np.append(steps, TWO_PI / phis.size)

    first = int(np.argmax(slice_max))
    best_u, best = coords(first), float(slice_max[first])
    for n, i in enumerate(_pick_starts(slice_max, cfg.top_k)):
        rng = np.random.default_rng([cfg.seed, n])
        u, v = _refine(objective, coords(i), float(slice_max[i]), steps, cfg, rng)
        if v > best:
            best_u, best = u, v
    b1, alpha_w, beta_w = _decode(best_u[None, :])
    if complex_b1:
        b1w = complex(b1[0])
    else:
        b1w = complex(float(best_u[0]), 0.0)
    return best, Witness(b1=b1w, alpha=complex(alpha_w[0]), beta=complex(beta_w[0]))


def adjudicate(closed: BoundValue, oracle_max: float, cfg: OracleConfig) -> tuple[Status, str]:
    """Compare an oracle maximum with a printed estimate (tolerances relative)."""
    scale = max(closed.value, 1e-12)
    tol_c, tol_s = cfg.tol_confirm * scale, cfg.tol_sharp * scale
    if closed.printed < 0:
        return Status.DISCREPANT, "printed estimate is negative; no modulus satisfies it"
    if oracle_max > closed.value + tol_c:
        return Status.DISCREPANT, "oracle exceeds the printed estimate"
    if abs(oracle_max - closed.value) <= tol_c:
        return Status.CONFIRMED, "oracle attains the printed estimate"
    if closed.value - oracle_max > tol_s:
        return Status.DISCREPANT, "printed estimate not attained (not sharp)"
    return Status.UNVERIFIED, "oracle falls short of the estimate within the sharpness tolerance"


def maximize_functional(fid: FunctionalId, ctx: QContext, cfg: OracleConfig | None = None) -> BoundReport:
    cfg = cfg or OracleConfig()
    best, witness = maximize_jets(jet_objective(fid, ctx), cfg, use_beta=fid.uses_a4)
    closed = sharp_bound(fid, ctx)
    status, reason = adjudicate(closed, best, cfg)
    return BoundReport(
        fid=fid,
        ctx=ctx,
        closed_form=closed,
        oracle_max=best,
        witness=witness,
        abs_gap=abs(best - closed.value),
        status=status,
        reason=reason,
    )


@dataclass(frozen=True)
class RotationDiagnostic:
    fid: FunctionalId
    ctx: QContext
    real_max: float
    complex_max: float
    complex_witness: Witness
    consistent: bool


def rotation_diagnostic(fid: FunctionalId, ctx: QContext, cfg: OracleConfig | None = None) -> RotationDiagnostic:
    """Check that restricting to ``b1 >= 0`` loses nothing for ``fid``.

    Runs the oracle with complex ``b1`` on a small grid; the normalisation is
    sound only if that never beats the real-``b1`` maximum.
    """
    cfg = cfg or OracleConfig(grid_b1=24, grid_radial=12, grid_angular=32, refine_iters=80)
    obj = jet_objective(fid, ctx)
    real_max, _ = maximize_jets(obj, cfg, use_beta=fid.uses_a4)
    cmax, cw = maximize_jets(obj, cfg, use_beta=fid.uses_a4, complex_b1=True)
    consistent = cmax <= real_max * (1.0 + cfg.tol_confirm) + 1e-12
    return RotationDiagnostic(fid, ctx, real_max, cmax, cw, consistent)


# --- lemmas ----------------------------------------------------------------

def Y_closed(A: float, B: float, C: float) -> float:
    """``max_{|z|<=1} |A + Bz + Cz^2| + 1 - |z|^2`` for real A, B, C with AC >= 0."""
    if A * C < 0:
        raise ValueError("closed form only covers AC >= 0")
    aA, aB, aC = abs(A), abs(B), abs(C)
    if aB >= 2.0 * (1.0 - aC):
        return aA + aB + aC
    return 1.0 + aA + B * B / (4.0 * (1.0 - aC))


def _disk_maximize(func, cfg: OracleConfig, radial: int = 64, angular: int = 256) -> tuple[float, complex]:
    rs = np.linspace(0.0, 1.0, radial)
    ths = np.linspace(0.0, TWO_PI, angular, endpoint=False)
    z = rs[:, None] * np.exp(1j * ths)[None, :]
    vals = func(z)
    order = np.argsort(-vals, axis=None, kind="stable")[: cfg.top_k]
    best, best_z = float(vals.flat[order[0]]), complex(z.flat[order[0]])
    steps = np.array([1.0 / (radial - 1), TWO_PI / angular])
    eye = np.eye(2)
    for n, idx in enumerate(order):
        rng = np.random.default_rng([cfg.seed, n])
        ir, it = np.unravel_index(idx, vals.shape)
        u, cur, step = np.array([rs[ir], ths[it]]), float(vals[ir, it]), steps.copy()
        for _ in range(cfg.refine_iters):
            cand = np.vstack([u + eye * step, u - eye * step, u + rng.uniform(-1, 1, (4, 2)) * step])
            cand[:, 0] = np.clip(cand[:, 0], 0.0, 1.0)
            zc = cand[:, 0] * np.exp(1j * cand[:, 1])
            v = func(zc)
            j = int(np.argmax(v))
            if v[j] > cur:
                u, cur = cand[j], float(v[j])
            else:
                step = step * cfg.refine_shrink
        if cur > best:
            best, best_z = cur, complex(u[0] * np.exp(1j * u[1]))
    return best, best_z


def Y_brute(A: float, B: float, C: float, cfg: OracleConfig | None = None) -> float:
    """Grid-plus-refinement value of the same maximum (no sign condition)."""
    cfg = cfg or OracleConfig()
    best, _ = _disk_maximize(lambda z: np.abs(A + B * z + C * z * z) + 1.0 - np.abs(z) ** 2, cfg)
    return best


def in_D1(sigma: float, nu: float) -> bool:
    """Region where ``|b3 + sigma b1 b2 + nu b1^3| <= |nu|`` holds."""
    s = abs(sigma)
    first = s >= 0.5 and nu <= -(2.0 / 3.0) * (s + 1.0)
    second = 2.0 <= s <= 4.0 and nu >= (sigma * sigma + 8.0) / 12.0
    return bool(first or second)


@dataclass(frozen=True)
class Lemma4Report:
    sigma: float
    nu: float
    maximum: float
    bound: float
    witness: Witness
    agrees: bool


def lemma4_verify(sigma: float, nu: float, cfg: OracleConfig | None = None, tol: float = 1e-4) -> Lemma4Report:
    if not in_D1(sigma, nu):
        raise ValueError(f"(sigma, nu) = ({sigma}, {nu}) lies outside the region D1")
    cfg = cfg or OracleConfig()

    def obj(b1, alpha, beta):
        b2, b3 = schwarz_b2_b3(b1, alpha, beta)
        return np.abs(b3 + sigma * b1 * b2 + nu * b1**3)

    best, w = maximize_jets(obj, cfg)
    return Lemma4Report(sigma, nu, best, abs(nu), w, abs(best - abs(nu)) <= tol * max(1.0, abs(nu)))


# --- proof surfaces --------------------------------------------------------

class Surface(str, enum.Enum):
    GAMMA_T23 = "gamma_t23"
    GAMMA2_T32 = "gamma2_t32"
    PHI1 = "phi1"
    PHI2 = "phi2"


def in_delta(x, y):
    """Membership in ``{0 <= x <= 1, 0 <= y <= 1 - x^2}``."""
    x, y = np.asarray(x), np.asarray(y)
    return (x >= 0) & (x <= 1) & (y >= 0) & (y <= 1 - x * x)


def delta_grid(n: int = 101) -> tuple[np.ndarray, np.ndarray]:
    """Tensor grid mapped into the region; ``y = t (1 - x^2)`` never leaves it."""
    x = np.linspace(0.0, 1.0, n)
    t = np.linspace(0.0, 1.0, n)
    X, T = np.meshgrid(x, t, indexing="ij")
    return X, T * (1.0 - X * X)


def surface(kind: Surface, x, y):
    """Value of a two-variable bound surface.

    Gamma surfaces take ``(|b1|, |b2|)`` in the region above; phi surfaces
    take ``(b1, q)`` in the open unit square.
    """
    kind = Surface(kind)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kind in (Surface.GAMMA_T23, Surface.GAMMA2_T32):
        if not np.all(in_delta(x, y)):
            raise ValueError("point outside 0 <= x <= 1, 0 <= y <= 1 - x^2")
        if kind is Surface.GAMMA_T23:
            p = 6 + 27 * x + 15 * x**2 - 10 * x**3 - 4 * x**4 - 6 * y**2
            return 0.25 * (1 + x * x) ** 2 - p * p / (324.0 * (1 + x) ** 2)
        k1 = 6 * y**2 - 6 - 9 * x + 10 * x**3 + 4 * x**4
        k2 = 3 * x * (1 - 4 * y**2) + 9 - 63 * x**2 - 39 * x**3 + 47 * x**4 + 35 * x**5 + 9 * x**6 + 9 * x**7
        return k1 * k2 / (648.0 * (1 + x) ** 2)
    if np.any((x <= 0) | (x >= 1) | (y <= 0) | (y >= 1)):
        raise ValueError("phi surfaces are defined on the open square (0, 1)^2")
    b, q = x, y
    if kind is Surface.PHI1:
        return (b * b * (1 + q + b * b * q + q * q) * (6 - 6 * q + 7 * q**2 - 4 * q**3 + q**4)
                / (6 * (1 - b * b) * (1 + q) ** 4))
    return (-2 * b * (1 + q) ** 2 + 2 * (1 + q + q * q) + b * b * (1 + q + 2 * q * q)) / (b * (1 + q) ** 2)


@dataclass(frozen=True)
class EdgeMax:
    edge: str
    maximum: float
    x: float
    y: float


def gamma_edge_maxima(kind: Surface = Surface.GAMMA_T23, n: int = 4001) -> list[EdgeMax]:
    """Maximum of a Gamma surface along each of the three edges of the region."""
    kind = Surface(kind)
    edges = {
        "y=0": lambda t: (t, 0.0 * t),
        "x=0": lambda t: (0.0 * t, t),
        "y=1-x^2": lambda t: (t, 1.0 - t * t),
    }
    out = []
    for name, param in edges.items():
        t = np.linspace(0.0, 1.0, n)
        vals = surface(kind, *param(t))
        i = int(np.argmax(vals))
        lo, hi = t[max(i - 1, 0)], t[min(i + 1, n - 1)]
        res = minimize_scalar(lambda s: -float(surface(kind, *param(np.array(s)))),
                              bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
        ts, vs = (res.x, -res.fun) if -res.fun > vals[i] else (t[i], vals[i])
        x, y = param(np.array(ts))
        out.append(EdgeMax(name, float(vs), float(x), float(y)))
    return out
