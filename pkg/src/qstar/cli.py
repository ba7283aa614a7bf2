"""Command-line front end: ``qstar {coeffs,verify,report,curve,membership}``.

Exit codes: 0 when everything checked is confirmed, 1 when a mathematical
discrepancy (or a non-member verdict) is found, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from datetime import datetime, timezone
from decimal import Decimal

from .functionals import FunctionalId, Kind
from .geometry import ExtremalSpec, Generator, Membership, boundary_curve, extremal_coeffs, membership_test
from .ledger import bound_report_json, build_report, membership_json, num, run_record
from .oracle import OracleConfig, Status, maximize_functional
from .qcalc import CLASSICAL, QContext, QContextError
from .series import Series

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2
_DECIMAL = re.compile(r"[0-9]*\.?[0-9]+")


class UsageError(Exception):
    pass


def parse_q(text: str) -> float:
    """Plain decimal only; scientific notation is refused."""
    if not _DECIMAL.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(f"q must be a plain decimal, got {text!r}")
    return float(Decimal(text.strip()))


def parse_mu(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"mu must be 're' or 're,im', got {text!r}")


def _default_seed() -> int:
    raw = os.environ.get("QSTAR_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QSTAR_SEED must be an integer, got {raw!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _add_mode(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("classical", "q"), default="classical")
    p.add_argument("--q", type=parse_q, help="deformation parameter in (0, 1), q mode only")


def _add_oracle(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $QSTAR_SEED or 0)")
    p.add_argument("--grid", type=_positive, help="grid points per search axis")
    p.add_argument("--refine", type=int, help="refinement iterations per start")


def _add_output(p: argparse.ArgumentParser, formats=("json",)) -> None:
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--stamp", action="store_true", help="record the wall-clock time (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qstar", description="Coefficient-bound verification for q-starlike classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="Taylor coefficients of an extremal function")
    _add_mode(p)
    p.add_argument("--generator", choices=[g.value for g in Generator], default="xi")
    p.add_argument("--order", type=_positive, default=4, help="number of coefficients a1..a_order")
    _add_output(p)

    p = sub.add_parser("verify", help="oracle-check one printed bound")
    p.add_argument("--functional", required=True, choices=[k.value for k in Kind])
    p.add_argument("--mu", type=parse_mu)
    _add_mode(p)
    _add_oracle(p)
    _add_output(p)

    p = sub.add_parser("report", help="full verification ledger")
    p.add_argument("--q", type=parse_q, action="append", help="q values to sweep (repeatable; default 0.5 and 0.8)")
    _add_oracle(p)
    _add_output(p)

    p = sub.add_parser("curve", help="boundary curve of the image domain")
    _add_mode(p)
    p.add_argument("--samples", type=int, default=2048)
    p.add_argument("--eps", type=float, default=1e-2)
    _add_output(p, formats=("csv", "json"))

    p = sub.add_parser("membership", help="test a coefficient list for class membership")
    p.add_argument("coeff_file", help="JSON array [a1, a2, ...] with a1 = 1")
    _add_mode(p)
    p.add_argument("--samples", type=int, default=512, help="angles per test circle")
    _add_output(p)
    return parser


def _context(args) -> QContext:
    if args.mode == "classical":
        if args.q is not None:
            raise UsageError("--q only applies with --mode q")
        return CLASSICAL
    if args.q is None:
        raise UsageError("--mode q needs --q")
    return QContext(args.q)


def _oracle_config(args) -> OracleConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    kw = {"seed": seed}
    if args.grid is not None:
        kw.update(grid_b1=args.grid, grid_angular=args.grid, grid_radial=max(2, args.grid // 2))
    if args.refine is not None:
        kw["refine_iters"] = args.refine
    return OracleConfig(**kw)


def _mode_params(ctx: QContext) -> dict:
    return {"mode": "classical" if ctx.is_classical else "q", "q": None if ctx.is_classical else num(ctx.q)}


def _oracle_params(cfg: OracleConfig) -> dict:
    return {"seed": cfg.seed, "grid_b1": cfg.grid_b1, "grid_radial": cfg.grid_radial,
            "grid_angular": cfg.grid_angular, "refine_iters": cfg.refine_iters}


def _emit(args, text: str) -> None:
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _emit_record(args, command: str, params: dict, results) -> None:
    stamp = datetime.now(timezone.utc).isoformat() if args.stamp else None
    rec = run_record(command, params, results, stamp)
    _emit(args, json.dumps(rec, indent=2, sort_keys=False, allow_nan=False) + "\n")


def cmd_coeffs(args) -> int:
    ctx = _context(args)
    if args.order < 2:
        raise UsageError("--order must be at least 2")
    f = extremal_coeffs(ExtremalSpec(ctx, Generator(args.generator), args.order))
    params = {**_mode_params(ctx), "generator": args.generator, "order": args.order}
    _emit_record(args, "coeffs", params, {"coefficients": [num(c.real) for c in f.coeffs[1:]]})
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = _context(args)
    kind = Kind(args.functional)
    if kind is not Kind.FEKETE_SZEGO and args.mu is not None:
        raise UsageError("--mu only applies to --functional fs")
    fid = FunctionalId.parse(kind.value, args.mu)
    cfg = _oracle_config(args)
    report = maximize_functional(fid, ctx, cfg)
    params = {"functional": str(fid), **_mode_params(ctx), **_oracle_params(cfg)}
    _emit_record(args, "verify", params, bound_report_json(report))
    return EXIT_OK if report.status is Status.CONFIRMED else EXIT_DISCREPANCY


def cmd_report(args) -> int:
    qs = args.q if args.q else [0.5, 0.8]
    for q in qs:
        QContext(q)
    cfg = _oracle_config(args)
    led = build_report(qs, cfg)
    params = {"q_values": [num(q) for q in sorted(set(qs))], **_oracle_params(cfg)}
    _emit_record(args, "report", params, led.as_dict())
    return EXIT_DISCREPANCY if led.has_discrepancy else EXIT_OK


def cmd_curve(args) -> int:
    ctx = _context(args)
    curve = boundary_curve(ctx, args.samples, args.eps)
    rows = [(num(t), num(p.real), num(p.imag)) for t, p in zip(curve.theta, curve.points)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("theta", "re", "im"))
        w.writerows(rows)
        _emit(args, buf.getvalue())
    else:
        params = {**_mode_params(ctx), "samples": args.samples, "eps": num(args.eps)}
        _emit_record(args, "curve", params, [{"theta": t, "re": x, "im": y} for t, x, y in rows])
    return EXIT_OK


def read_coeff_file(path: str) -> Series:
    """Load ``[a1, a2, ...]``; entries are numbers or ``[re, im]`` pairs."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read coefficient file {path}: {exc}") from None
    if not isinstance(data, list) or not data:
        raise UsageError("coefficient file must hold a non-empty JSON array")
    coeffs = [0.0]
    for item in data:
        if isinstance(item, bool):
            raise UsageError("coefficients must be numbers")
        if isinstance(item, (int, float)):
            coeffs.append(complex(item))
        elif isinstance(item, list) and len(item) == 2 and all(isinstance(v, (int, float)) for v in item):
            coeffs.append(complex(item[0], item[1]))
        else:
            raise UsageError(f"bad coefficient entry {item!r}")
    if coeffs[1] != 1:
        raise UsageError("the first coefficient a1 must equal 1")
    if len(coeffs) == 2:
        coeffs.append(0.0)
    return Series(coeffs)


def cmd_membership(args) -> int:
    ctx = _context(args)
    f = read_coeff_file(args.coeff_file)
    verdict = membership_test(f, ctx, theta_samples=args.samples, exact=True)
    params = {**_mode_params(ctx), "coeff_file": os.path.basename(args.coeff_file), "samples": args.samples}
    _emit_record(args, "membership", params, membership_json(verdict))
    return EXIT_OK if verdict.status is Membership.MEMBER else EXIT_DISCREPANCY


COMMANDS = {
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "report": cmd_report,
    "curve": cmd_curve,
    "membership": cmd_membership,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, QContextError, ValueError) as exc:
        parser.exit(EXIT_USAGE, f"qstar {args.command}: error: {exc}\n")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
