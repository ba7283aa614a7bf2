"""JSON encoding of results and assembly of the full verification ledger."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__
from .coeffmaps import coeffs_q, schwarz_b2_b3, schwarz_jet, schwarz_slack
from .functionals import (
    KIND_ORDER,
    FunctionalId,
    Kind,
    LimitReport,
    all_functionals,
    classical_limit_report,
    evaluate_functional,
)
from .geometry import (
    ExtremalSpec,
    Generator,
    MembershipVerdict,
    extremal_coeffs,
    extremal_eval_integral,
    extremal_pole_radius,
    membership_test,
)
from .oracle import (
    BoundReport,
    OracleConfig,
    RotationDiagnostic,
    Status,
    Surface,
    Witness,
    Y_brute,
    Y_closed,
    delta_grid,
    gamma_edge_maxima,
    lemma4_verify,
    maximize_functional,
    rotation_diagnostic,
    surface,
)
from .qcalc import CLASSICAL, QContext, q_numbers, xi_coeffs
from .series import Series, hadamard, mul

SIG_DIGITS = 12
REPORT_FS_MU = (0.0, -0.5, 2.0)
MEMBERSHIP_ORDER = 400


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas, e.g. ``load_schema("ledger")``."""
    text = resources.files("qstar").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def num(x):
    """Round to 12 significant digits; non-finite values become strings."""
    x = float(x)
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if x == 0.0:
        return 0.0
    return float(f"{x:.{SIG_DIGITS}g}")


def cplx(z) -> dict:
    z = complex(z)
    return {"re": num(z.real), "im": num(z.imag)}


def mode_fields(ctx: QContext) -> dict:
    return {"mode": "classical" if ctx.is_classical else "q", "q": None if ctx.is_classical else num(ctx.q)}


def run_record(command: str, parameters: dict, results, timestamp: str | None = None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "timestamp": timestamp,
        "version": __version__,
        "results": results,
    }


def witness_json(w: Witness, fid: FunctionalId, ctx: QContext) -> dict:
    j = w.jet()
    c = coeffs_q(ctx, j)
    return {
        "b1": cplx(j.b1),
        "alpha": cplx(j.alpha),
        "beta": cplx(j.beta),
        "b2": cplx(j.b2),
        "b3": cplx(j.b3),
        "a2": cplx(c.a2),
        "a3": cplx(c.a3),
        "a4": cplx(c.a4),
        "value": num(evaluate_functional(fid, c)),
    }


def functional_json(fid: FunctionalId) -> dict:
    return {"functional": str(fid), "kind": fid.tag, "mu": None if fid.mu is None else cplx(fid.mu)}


def bound_report_json(r: BoundReport) -> dict:
    cf = r.closed_form
    return {
        **functional_json(r.fid),
        **mode_fields(r.ctx),
        "closed_form": num(cf.value),
        "printed": num(cf.printed),
        "source": cf.source,
        "caveat": cf.caveat,
        "oracle_max": num(r.oracle_max),
        "abs_gap": num(r.abs_gap),
        "status": r.status.value,
        "reason": r.reason,
        "witness": witness_json(r.witness, r.fid, r.ctx),
    }


def limit_report_json(r: LimitReport) -> dict:
    return {
        **functional_json(r.fid),
        "q_values": [num(q) for q in r.q_values],
        "q_bounds": [num(v) for v in r.q_bounds],
        "limit": num(r.limit),
        "classical": num(r.classical),
        "gap": num(r.gap),
        "status": r.status,
        "note": r.note,
    }


def rotation_json(d: RotationDiagnostic) -> dict:
    return {
        **functional_json(d.fid),
        **mode_fields(d.ctx),
        "rotation_invariant": d.fid.rotation_invariant,
        "real_b1_max": num(d.real_max),
        "complex_b1_max": num(d.complex_max),
        "complex_witness": {k: cplx(getattr(d.complex_witness, k)) for k in ("b1", "alpha", "beta")},
        "consistent": d.consistent,
    }


def membership_json(v: MembershipVerdict) -> dict:
    return {
        "status": v.status.value,
        "worst_point": {"r": num(v.worst_point[0]), "theta": num(v.worst_point[1])},
        "margin": num(v.margin),
        "largest_reliable_r": None if v.largest_reliable_r is None else num(v.largest_reliable_r),
        "reason": v.reason,
    }


# --- full report -----------------------------------------------------------


def _sort_key(ctx: QContext) -> float:
    return -1.0 if ctx.is_classical else ctx.q


def _contexts(q_list) -> list[QContext]:
    qs = sorted({float(q) for q in q_list})
    return [CLASSICAL] + [QContext(q) for q in qs]


CANONICAL_WITNESSES = {
    "w=z": (1.0, 0.0, 0.0),
    "w=z^2": (0.0, 1.0, 0.0),
    "w=z^3": (0.0, 0.0, 1.0),
}


def canonical_witness_table(ctxs) -> list[dict]:
    """Functional values on the jets of ``z``, ``z^2`` and ``z^3``."""
    rows = []
    for ctx in ctxs:
        for name, (b1, alpha, beta) in CANONICAL_WITNESSES.items():
            c = coeffs_q(ctx, schwarz_jet(b1, alpha, beta))
            rows.append({
                **mode_fields(ctx),
                "schwarz": name,
                "values": {str(fid): num(evaluate_functional(fid, c)) for fid in all_functionals()},
            })
    return rows


def lemma_checks(cfg: OracleConfig) -> dict:
    rng = np.random.default_rng([cfg.seed, 1])
    worst_y = 0.0
    for _ in range(100):
        a, b, c = rng.uniform(-2.0, 2.0, 3)
        c = abs(c) * (1.0 if a >= 0 else -1.0)
        worst_y = max(worst_y, abs(Y_closed(a, b, c) - Y_brute(a, b, c, cfg)))

    l4 = lemma4_verify(3.5, 17.0 / 6.0, cfg)

    n = 100_000
    b1 = rng.uniform(0.0, 1.0, n)
    alpha = np.sqrt(rng.uniform(0.0, 1.0, n)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    beta = np.sqrt(rng.uniform(0.0, 1.0, n)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    b2, b3 = schwarz_b2_b3(b1, alpha, beta)
    slacks = np.vstack(schwarz_slack(b1, b2, b3))
    slack = slacks.min(axis=1)
    violations = int(np.count_nonzero(slacks < -1e-12))

    edges = {k.value: [{"edge": e.edge, "max": num(e.maximum), "x": num(e.x), "y": num(e.y)}
                       for e in gamma_edge_maxima(k)] for k in (Surface.GAMMA_T23, Surface.GAMMA2_T32)}
    g = np.linspace(0.01, 0.99, 100)
    B, Q = np.meshgrid(g, g, indexing="ij")
    X, Y = delta_grid(101)
    return {
        "y_closed_vs_brute": {"instances": 100, "max_abs_diff": num(worst_y), "pass": bool(worst_y <= 1e-4)},
        "lemma4": {"sigma": num(l4.sigma), "nu": num(l4.nu), "maximum": num(l4.maximum),
                   "bound": num(l4.bound), "pass": bool(l4.agrees)},
        "schwarz_inequalities": {"jets": n, "violations": violations,
                                 "min_slack": [num(v) for v in slack], "pass": violations == 0},
        "gamma_edges": edges,
        "gamma_t23_grid_max": num(np.max(surface(Surface.GAMMA_T23, X, Y))),
        "phi_minima": {
            "phi1": num(np.min(surface(Surface.PHI1, B, Q))),
            "phi2": num(np.min(surface(Surface.PHI2, B, Q))),
        },
    }


def extremal_checks(ctxs) -> list[dict]:
    rows = []
    for ctx in ctxs:
        for gen in Generator:
            spec = ExtremalSpec(ctx, gen, 64)
            f = extremal_coeffs(spec)
            pts = (-0.5, -0.25, 0.25, 0.5)
            diff = max(abs(f(z) - extremal_eval_integral(spec, z)) for z in pts)
            verdict = membership_test(extremal_coeffs(ExtremalSpec(ctx, gen, MEMBERSHIP_ORDER)), ctx)
            row = {
                **mode_fields(ctx),
                "generator": gen.value,
                "a2_a3_a4": [num(f[k].real) for k in (2, 3, 4)],
                "series_vs_integral_max_diff": num(diff),
                "pole_radius": num(extremal_pole_radius(ctx, gen)),
                "membership": membership_json(verdict),
            }
            if gen is Generator.XI:
                # z / ((1 - qz)(1 - z)) has coefficients [n]_q
                g = Series(q_numbers(12, ctx))
                f12 = f.truncate(12)
                lhs = hadamard(f12, g)
                rhs = mul(f12, xi_coeffs(ctx, 12))
                row["convolution_identity_max_diff"] = num(np.max(np.abs(lhs.coeffs - rhs.coeffs)))
            rows.append(row)
    return rows


@dataclass
class Ledger:
    bound_reports: list[dict] = field(default_factory=list)
    limit_reports: list[dict] = field(default_factory=list)
    fs_probes: list[dict] = field(default_factory=list)
    rotation: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    lemmas: dict = field(default_factory=dict)
    extremals: list[dict] = field(default_factory=list)
    discrepancies: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "bound_reports": self.bound_reports,
            "limit_reports": self.limit_reports,
            "fs_probes": self.fs_probes,
            "rotation_diagnostics": self.rotation,
            "canonical_witnesses": self.witnesses,
            "lemma_checks": self.lemmas,
            "extremal_checks": self.extremals,
            "discrepancies": self.discrepancies,
        }

    @property
    def has_discrepancy(self) -> bool:
        return bool(self.discrepancies)


def _discrepancy(category: str, subject: str, detail: str, evidence: dict | None = None) -> dict:
    return {"category": category, "subject": subject, "detail": detail, "evidence": evidence or {}}


def build_report(q_list=(0.5, 0.8), cfg: OracleConfig | None = None) -> Ledger:
    cfg = cfg or OracleConfig()
    ctxs = _contexts(q_list)
    led = Ledger()

    reports = [maximize_functional(fid, ctx, cfg) for fid in all_functionals() for ctx in ctxs]
    reports.sort(key=lambda r: (KIND_ORDER.index(r.fid.kind), _sort_key(r.ctx)))
    led.bound_reports = [bound_report_json(r) for r in reports]
    for r, js in zip(reports, led.bound_reports):
        if r.status is not Status.CONFIRMED:
            led.discrepancies.append(_discrepancy(
                "bound", f"{r.fid} {r.ctx.label}", r.reason,
                {"printed": js["printed"], "oracle_max": js["oracle_max"], "witness": js["witness"]}))

    for fid in all_functionals():
        lr = classical_limit_report(fid)
        led.limit_reports.append(limit_report_json(lr))
        if lr.status != "MATCH":
            led.discrepancies.append(_discrepancy(
                "limit", str(fid), "q-estimate does not tend to the classical estimate",
                {"limit": num(lr.limit), "classical": num(lr.classical)}))

    for ctx in ctxs:
        for mu in REPORT_FS_MU:
            r = maximize_functional(FunctionalId(Kind.FEKETE_SZEGO, mu), ctx, cfg)
            js = bound_report_json(r)
            led.fs_probes.append(js)
            if r.status is not Status.CONFIRMED:
                led.discrepancies.append(_discrepancy(
                    "fekete_szego", f"{r.fid} {ctx.label}", r.reason,
                    {"printed": js["printed"], "oracle_max": js["oracle_max"], "witness": js["witness"]}))

    for fid in all_functionals():
        for ctx in ctxs:
            d = rotation_diagnostic(fid, ctx)
            led.rotation.append(rotation_json(d))
            if not d.consistent:
                led.discrepancies.append(_discrepancy(
                    "rotation", f"{fid} {ctx.label}",
                    "complex b1 exceeds the b1 >= 0 maximum; normalisation unsound for this functional",
                    {"real_b1_max": num(d.real_max), "complex_b1_max": num(d.complex_max)}))

    led.witnesses = canonical_witness_table(ctxs)
    led.lemmas = lemma_checks(cfg)
    for name in ("y_closed_vs_brute", "lemma4", "schwarz_inequalities"):
        if not led.lemmas[name]["pass"]:
            led.discrepancies.append(_discrepancy("lemma", name, "check failed", led.lemmas[name]))
    led.extremals = extremal_checks(ctxs)
    for row in led.extremals:
        if row["membership"]["status"] != "MEMBER":
            led.discrepancies.append(_discrepancy(
                "membership", f"{row['generator']} {row['mode']} {row['q']}",
                "extremal function not confirmed as a class member", row["membership"]))
    return led
