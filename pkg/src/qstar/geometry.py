"""Extremal functions, boundary curves of xi_q(D) and subordination checks.

Also holds the growth, distortion, rotation and covering evaluators of the
classical class, all built on the extremal function

    f(z) = z exp( int_0^z sin t / (t (1 - t)) dt ).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .qcalc import CLASSICAL, QContext, q_numbers, xi_coeffs, xi_derivative_eval, xi_eval
from .series import DEFAULT_ORDER, Series, evaluate

QUAD_EPSABS = 1e-10


class Generator(str, enum.Enum):
    XI = "xi"
    XI_SQUARED = "xi2"


@dataclass(frozen=True)
class ExtremalSpec:
    """Extremal function of ``z D f / f = G(z)`` with ``G = xi_q`` or ``xi_q(z^2)``."""

    ctx: QContext
    generator: Generator = Generator.XI
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        object.__setattr__(self, "generator", Generator(self.generator))
        if self.order < 2:
            raise ValueError("extremal order must be at least 2")


def generator_series(ctx: QContext, generator: Generator, order: int) -> Series:
    base = xi_coeffs(ctx, order)
    if Generator(generator) is Generator.XI:
        return base
    out = np.zeros(order + 1, dtype=np.complex128)
    out[::2] = base.coeffs[: order // 2 + 1]
    return Series(out)


def generator_eval(ctx: QContext, generator: Generator, z):
    z = np.asarray(z, dtype=np.complex128)
    return xi_eval(ctx, z if Generator(generator) is Generator.XI else z * z)


def extremal_coeffs(spec: ExtremalSpec) -> Series:
    """Series of the extremal function via ``a_n ([n]_q - 1) = sum_k c_k a_(n-k)``."""
    n_max = spec.order
    c = generator_series(spec.ctx, spec.generator, n_max).coeffs.real
    t = q_numbers(n_max, spec.ctx)
    a = np.zeros(n_max + 1)
    a[1] = 1.0
    for n in range(2, n_max + 1):
        # a[n-k] for k = 1..n-1, i.e. a[n-1] .. a[1]
        a[n] = np.dot(c[1:n], a[n - 1 : 0 : -1]) / (t[n] - 1.0)
    return Series(a)


def _log_integrand(generator: Generator):
    if generator is Generator.XI:
        def g(t):
            return 1.0 if t == 0.0 else math.sin(t) / (t * (1.0 - t))
    else:
        def g(t):
            return 0.0 if t == 0.0 else math.sin(t * t) / (t * (1.0 - t * t))
    return g


def _log_integral(generator: Generator, z: float, epsabs: float = QUAD_EPSABS) -> float:
    val, _ = integrate.quad(_log_integrand(generator), 0.0, z, epsabs=epsabs, epsrel=0.0, limit=200)
    return val


def _q_product(ctx: QContext, generator: Generator, z: complex, max_terms: int = 4000) -> complex:
    # f(qz) = f(z) (1 - (1-q) G(z)) iterated towards the origin.
    q = ctx.q
    prod = 1.0 + 0.0j
    w = complex(z)
    for _ in range(max_terms):
        factor = q / (1.0 - (1.0 - q) * complex(generator_eval(ctx, generator, w)))
        prod *= factor
        if abs(factor - 1.0) < 1e-17:
            break
        w *= q
    return z * prod


def extremal_eval_integral(spec: ExtremalSpec, z: float) -> float:
    """Value of the extremal function at real ``z`` in (-1, 1), without its series.

    Classical mode integrates the logarithmic derivative by quadrature. In
    q-mode there is no ordinary integral; the functional equation
    ``f(qz) = f(z) (1 - (1 - q) G(z))`` is iterated into a convergent product.
    """
    z = float(z)
    if not -1.0 < z < 1.0:
        raise ValueError(f"z must lie in (-1, 1), got {z}")
    if z == 0.0:
        return 0.0
    if spec.ctx.is_classical:
        return z * math.exp(_log_integral(spec.generator, z))
    return _q_product(spec.ctx, spec.generator, z).real


def extremal_pole_radius(ctx: QContext, generator: Generator = Generator.XI) -> float:
    """Smallest ``|z|`` at which the q-extremal function has a pole (inf if none).

    The poles sit where ``(1 - q) G(z) = 1``. ``G - 1`` has positive
    coefficients, so the root of least modulus is on the positive axis.
    """
    if ctx.is_classical:
        return math.inf
    q = ctx.q

    def h(x):
        return (1.0 - q) * xi_eval(ctx, x).real - 1.0

    hi = 1.0 / q * (1.0 - 1e-12)
    if h(hi) < 0:
        return math.inf
    root = optimize.brentq(h, 0.0, hi, xtol=1e-15)
    return math.sqrt(root) if Generator(generator) is Generator.XI_SQUARED else root


# --- boundary curves -------------------------------------------------------


@dataclass(frozen=True)
class CurveSample:
    theta: float
    point: complex


@dataclass(frozen=True)
class BoundaryCurve:
    ctx: QContext
    eps: float
    theta: np.ndarray
    points: np.ndarray

    def samples(self) -> list[CurveSample]:
        return [CurveSample(float(t), complex(p)) for t, p in zip(self.theta, self.points)]

    def __len__(self) -> int:
        return self.theta.size


def _lattice(samples: int, eps: float) -> tuple[int, int]:
    """Pick ``M`` and offset ``m`` so that ``2 pi k / M``, ``m <= k < M - m``, gives
    ``samples`` angles beyond ``eps``; ``M`` divisible by 4 when possible."""
    for modulus in (4, 2, 1):
        if (samples % 2) and modulus > 1:
            continue
        m = 1
        while True:
            big = samples + 2 * m
            if big % modulus == 0 and 2.0 * math.pi * m / big > eps:
                return big, m
            m += 1
    raise AssertionError("unreachable")


def boundary_curve(ctx: QContext, samples: int = 2048, eps: float = 1e-2) -> BoundaryCurve:
    """``xi_q(e^{i theta})`` on an equispaced lattice inside ``(eps, 2 pi - eps)``.

    The lattice step is ``2 pi / M`` for an ``M`` divisible by four whenever
    ``samples`` is even, so ``theta = pi/2`` and ``theta = pi`` are hit exactly.
    """
    if samples < 16:
        raise ValueError("need at least 16 samples")
    if not 0.0 < eps < math.pi:
        raise ValueError("eps must lie in (0, pi)")
    big, m = _lattice(samples, eps)
    theta = 2.0 * math.pi * np.arange(m, big - m) / big
    pts = np.asarray(xi_eval(ctx, np.exp(1j * theta)))
    theta.setflags(write=False)
    pts.setflags(write=False)
    return BoundaryCurve(ctx, eps, theta, pts)


@dataclass(frozen=True)
class MaMindaReport:
    symmetry_error: float
    symmetric: bool
    min_arg_step: float
    monotone_argument: bool
    derivative_at_zero: float
    positive_derivative: bool

    @property
    def passed(self) -> bool:
        return self.symmetric and self.monotone_argument and self.positive_derivative


def maminda_checks(curve: BoundaryCurve, sym_tol: float = 1e-9, arg_tol: float = 1e-12) -> MaMindaReport:
    """Real-axis symmetry, starlikeness about 1, and ``xi'(0) > 0`` on a sampled curve."""
    mirror = np.asarray(xi_eval(curve.ctx, np.exp(-1j * curve.theta)))
    sym = float(np.max(np.abs(np.conj(mirror) - curve.points)))
    args = np.unwrap(np.angle(curve.points - 1.0))
    step = float(np.min(np.diff(args)))
    d0 = float(xi_derivative_eval(curve.ctx, 0.0).real)
    return MaMindaReport(sym, sym <= sym_tol, step, step >= -arg_tol, d0, d0 > 0)


# --- subordination membership ---------------------------------------------


class Membership(str, enum.Enum):
    MEMBER = "MEMBER"
    NON_MEMBER = "NON_MEMBER"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class MembershipVerdict:
    status: Membership
    worst_point: tuple[float, float]
    margin: float
    largest_reliable_r: float | None
    reason: str


def _closed_polygon(curve: BoundaryCurve) -> tuple[np.ndarray, int]:
    """Vertex loop and the index of the first artificial (closing) edge.

    A bounded image is closed by the chord across the excluded arc. The
    classical image runs off to infinity in the right half-plane near
    ``theta = 0``, so there the loop is closed by a box far to the right.
    """
    pts = np.asarray(curve.points)
    n_real = pts.size - 1
    if curve.ctx.is_classical:
        far = 10.0 * float(np.max(np.abs(pts)))
        cap = np.array([complex(far, pts[-1].imag), complex(far, pts[0].imag)])
        loop = np.concatenate([pts, cap, pts[:1]])
    else:
        loop = np.concatenate([pts, pts[:1]])
    return loop, n_real


def _signed_distance(loop: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distance to the polygon (positive inside) and the nearest edge index."""
    a, b = loop[:-1], loop[1:]
    d = b - a
    len2 = np.abs(d) ** 2
    wc = w[:, None]
    t = np.clip(((wc - a).real * d.real + (wc - a).imag * d.imag) / len2, 0.0, 1.0)
    dist = np.abs(wc - (a + t * d))
    nearest = np.argmin(dist, axis=1)
    dmin = dist[np.arange(w.size), nearest]
    # even-odd ray cast towards +real
    ay, by = a.imag, b.imag
    straddle = (ay > wc.imag) != (by > wc.imag)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = a.real + (wc.imag - ay) * (b.real - a.real) / (by - ay)
    inside = (np.count_nonzero(straddle & (wc.real < x_cross), axis=1) % 2) == 1
    return np.where(inside, dmin, -dmin), nearest


def ratio_on_circle(f: Series, ctx: QContext, r: float, theta: np.ndarray) -> np.ndarray:
    """``z D f / f`` on ``|z| = r``, straight from the polynomial."""
    z = r * np.exp(1j * theta)
    fz = evaluate(f, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        if ctx.is_classical:
            k = np.arange(f.order + 1)
            num = evaluate(Series(f.coeffs * k), z)
        else:
            num = (fz - evaluate(f, ctx.q * z)) / (1.0 - ctx.q)
        return num / fz


def _tail(f: Series, r: float) -> float:
    n = f.order
    c = np.abs(f.coeffs)
    return float(max(c[n - 1] * (n - 1) * r ** (n - 1), c[n] * n * r**n)) if n >= 2 else 0.0


def membership_test(
    f: Series,
    ctx: QContext = CLASSICAL,
    r_grid=(0.5, 0.7, 0.9),
    theta_samples: int = 512,
    *,
    exact: bool = False,
    curve_samples: int = 2048,
    eps: float = 1e-2,
    margin_tol: float = 1e-9,
    tail_tol: float = 1e-8,
) -> MembershipVerdict:
    """Numerical test of ``z D f / f`` lying in ``xi_q(D)`` on the given circles.

    ``f`` is taken as a truncated series unless ``exact`` says it is a
    polynomial. Only radii where the truncation tail is below ``tail_tol``
    are tested; the largest of them is recorded. An exit across the
    artificial edges that close the sampled curve is INCONCLUSIVE.
    """
    c = f.coeffs
    if f.order < 1 or abs(c[0]) > 1e-12 or abs(c[1] - 1.0) > 1e-12:
        raise ValueError("f must be normalised: a0 = 0, a1 = 1")
    radii = sorted(float(r) for r in r_grid)
    if not radii or radii[0] <= 0 or radii[-1] >= 1:
        raise ValueError("radii must lie in (0, 1)")
    curve = boundary_curve(ctx, curve_samples, eps)
    loop, n_real = _closed_polygon(curve)
    theta = 2.0 * math.pi * np.arange(theta_samples) / theta_samples

    reliable = [r for r in radii if exact or _tail(f, r) <= tail_tol]
    if not reliable:
        return MembershipVerdict(Membership.INCONCLUSIVE, (radii[0], 0.0), math.nan, None,
                                 "no radius with a negligible series tail")
    worst = (reliable[0], 0.0, math.inf, False)  # r, theta, margin, artificial edge
    for r in reliable:
        w = ratio_on_circle(f, ctx, r, theta)
        good = np.isfinite(w)
        margin = np.full(theta.size, -math.inf)
        nearest = np.zeros(theta.size, dtype=int)
        if good.any():
            margin[good], nearest[good] = _signed_distance(loop, w[good])
        i = int(np.argmin(margin))
        if margin[i] < worst[2]:
            worst = (r, float(theta[i]), float(margin[i]), bool(good[i] and nearest[i] >= n_real))

    r, th, m, artificial = worst
    if m > margin_tol:
        status, why = Membership.MEMBER, "all ratio samples inside the sampled image"
    elif m >= -margin_tol:
        status, why = Membership.INCONCLUSIVE, "ratio touches the sampled boundary"
    elif artificial:
        status, why = Membership.INCONCLUSIVE, "exit across the excluded arc near theta = 0"
    else:
        status, why = Membership.NON_MEMBER, "ratio leaves the image"
    return MembershipVerdict(status, (r, th), m, reliable[-1], why)


# --- growth, distortion, rotation, covering --------------------------------


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    return r


def growth_bounds(r: float, ctx: QContext = CLASSICAL) -> tuple[float, float]:
    """``(-f(-r), f(r))`` for the extremal function of the class."""
    r = _check_r(r)
    spec = ExtremalSpec(ctx, Generator.XI, 2)
    return -extremal_eval_integral(spec, -r), extremal_eval_integral(spec, r)


def sin_ratio_max(r: float, samples: int = 4096) -> float:
    """``max_{|z| = r} |sin z / (1 - z)|`` by sampling plus a local polish."""
    r = _check_r(r)

    def neg(t):
        z = r * np.exp(1j * t)
        return -np.abs(np.sin(z) / (1.0 - z))

    theta = 2.0 * math.pi * np.arange(samples) / samples
    vals = neg(theta)
    i = int(np.argmin(vals))
    h = 2.0 * math.pi / samples
    res = optimize.minimize_scalar(neg, bounds=(theta[i] - h, theta[i] + h), method="bounded",
                                   options={"xatol": 1e-13})
    return float(max(-vals[i], -res.fun))


def distortion_bounds(r: float) -> tuple[float, float]:
    """``(|1 - M(r)| (-f(-r)) / r, |1 + M(r)| f(r) / r)`` with ``M = sin_ratio_max``."""
    lo_g, hi_g = growth_bounds(r)
    m = sin_ratio_max(r)
    return abs(1.0 - m) * lo_g / r, abs(1.0 + m) * hi_g / r


def covering_radius(epsabs: float = QUAD_EPSABS) -> float:
    """``-f(-1) = exp(int_0^{-1} sin t / (t (1 - t)) dt)``."""
    return math.exp(_log_integral(Generator.XI, -1.0, epsabs))


def rotation_bound(r: float, order: int = DEFAULT_ORDER, samples: int = 4096) -> float:
    """``max_{|z| = r} |arg(f(z) / z)|`` for the classical extremal series."""
    r = _check_r(r)
    f = extremal_coeffs(ExtremalSpec(CLASSICAL, Generator.XI, order))
    g = Series(f.coeffs[1:])  # f(z) / z
    z = r * np.exp(2j * math.pi * np.arange(samples) / samples)
    return float(np.max(np.abs(np.angle(evaluate(g, z)))))
