"""Command-line interface: validate, discriminant, spectrum, gaps, traces, converge.

Exit codes: 0 success, 2 invalid input (bad file, failed validation, base at
a node), 3 computation failure (quadrature, root deficit, overflow, labeling
conflict), 4 trace-identity failure.  Output is deterministic; floats are
emitted with 17 significant digits so CSV round-trips binary values exactly.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import convergence, spectra, traces
from .errors import (BaseAtNodeError, EpsilonTooLargeError, LabelingConflictError,
                     NonFiniteStateError, QuadratureError, RootDeficitError,
                     ZeroEigenvalueError)
from .floquet import discriminant
from .pairs import PairHandle, PeakonPair, SampledPair, load_pair, validate
from .shooting import discriminant_at, eigenvalue_window

_INPUT_ERRORS = (OSError, ValueError, KeyError, TypeError,
                 BaseAtNodeError, EpsilonTooLargeError)
_COMPUTE_ERRORS = (QuadratureError, RootDeficitError, NonFiniteStateError,
                   LabelingConflictError, ZeroEigenvalueError)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_handle(args) -> PairHandle:
    handle = load_pair(args.pair)
    if getattr(args, "base", None) is not None:
        handle = PairHandle(handle.pair, args.base)
    return handle


def _require_valid(handle: PairHandle) -> None:
    violations = validate(handle)
    if violations:
        detail = "; ".join(f"{v.code}: {v.message}" for v in violations)
        if any(v.code == "BaseAtNode" for v in violations):
            raise BaseAtNodeError(detail)
        raise ValueError(f"invalid pair: {detail}")


def _zgrid(args) -> np.ndarray:
    if args.samples < 2:
        raise ValueError("need at least 2 samples")
    if not args.zmin < args.zmax:
        raise ValueError("window must satisfy zmin < zmax")
    return np.linspace(args.zmin, args.zmax, args.samples)


def cmd_validate(args) -> int:
    handle = _load_handle(args)
    violations = validate(handle)
    _emit(args, _dump_json(
        {"violations": [{"code": v.code, "message": v.message} for v in violations]}))
    return 0 if not violations else 2


def cmd_discriminant(args) -> int:
    handle = _load_handle(args)
    _require_valid(handle)
    grid = _zgrid(args)
    pair = handle.pair
    if isinstance(pair, PeakonPair):
        delta = discriminant(pair, handle.resolved_base)
        values = np.real(delta(grid))
    else:
        values = discriminant_at(pair, grid, handle.resolved_base).real
    if args.format == "json":
        _emit(args, _dump_json({"z": grid.tolist(), "delta": values.tolist()}))
    else:
        lines = ["z,delta"] + [f"{_fmt(z)},{_fmt(v)}" for z, v in zip(grid, values)]
        _emit(args, "\n".join(lines) + "\n")
    if args.out and isinstance(pair, PeakonPair):
        report = spectra.build_report(pair, handle.resolved_base)
        side = report.to_dict()
        sidecar = {"gaps": side["gaps"], "kappa": side["kappa"],
                   "delta_coefficients": delta.coef.tolist()}
        with open(args.out + ".gaps.json", "w", encoding="utf-8") as fh:
            fh.write(_dump_json(sidecar))
    return 0


def _report_for(args, handle: PairHandle) -> spectra.SpectrumReport:
    pair = handle.pair
    if isinstance(pair, PeakonPair):
        return spectra.build_report(pair, handle.resolved_base)
    window = tuple(args.window) if args.window else eigenvalue_window(pair)
    if window is None:
        raise ValueError("bound certifies an empty spectrum; nothing to search")
    return spectra.build_report(pair, handle.resolved_base, window=window,
                                samples=args.samples)


def cmd_spectrum(args) -> int:
    handle = _load_handle(args)
    _require_valid(handle)
    report = _report_for(args, handle)
    if args.format == "json":
        _emit(args, _dump_json(report.to_dict()))
    else:
        lines = ["kind,index,value,multiplicity"]
        for group in (report.periodic, report.antiperiodic, report.dirichlet):
            for ev in group:
                lines.append(f"{ev.kind},{ev.index},{_fmt(ev.value)},{ev.multiplicity}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_gaps(args) -> int:
    handle = _load_handle(args)
    _require_valid(handle)
    if not isinstance(handle.pair, PeakonPair):
        raise ValueError("gap construction needs the complete spectrum; "
                         "only the exact peakon backend provides it")
    d = spectra.build_report(handle.pair, handle.resolved_base).to_dict()
    _emit(args, _dump_json({"gaps": d["gaps"], "kappa": d["kappa"],
                            "violations": d["violations"]}))
    return 0


def cmd_traces(args) -> int:
    handle = _load_handle(args)
    _require_valid(handle)
    if not isinstance(handle.pair, PeakonPair):
        raise ValueError("trace identities need the exact peakon backend")
    pair, base = handle.pair, handle.resolved_base
    report = spectra.build_report(pair, base)
    algebraic_tol = args.tol if args.tol is not None else 1e-8
    dirichlet_tol = args.tol if args.tol is not None else 1e-6
    checks = traces.check_periodic_traces(pair, report, tol=algebraic_tol)
    checks += traces.check_dirichlet_traces(pair, base, report, tol=dirichlet_tol)
    checks += traces.product_check(pair, report, base, tol=algebraic_tol)
    _emit(args, _dump_json([c.to_dict() for c in checks]))
    return 0 if all(c.passed for c in checks) else 4


def cmd_converge(args) -> int:
    handle = _load_handle(args)
    _require_valid(handle)
    if not isinstance(handle.pair, PeakonPair):
        raise ValueError("the convergence lab mollifies exact peakon pairs")
    eps_list = [float(tok) for tok in args.eps.split(",") if tok.strip()]
    if not all(a > b for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps values must be strictly decreasing")
    report = convergence.run_family(handle.pair, eps_list, _zgrid(args),
                                    handle.resolved_base)
    if args.format == "json":
        _emit(args, _dump_json({
            "eps": report.eps,
            "delta_dist": report.delta_dist,
            "dirichlet_dist": report.dirichlet_dist,
            "tracked": [{"kind": k, "value": v} for k, v in report.tracked],
            "drifts": report.drifts,
        }))
    else:
        _emit(args, report.to_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chspec",
        description="Spectra, trace formulas and convergence experiments for "
                    "periodic Camassa-Holm coefficient pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, grid=False, fmt=None, window=False,
            tol=False, eps=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--pair", required=True, help="pair JSON file")
        p.add_argument("--base", type=float, default=None,
                       help="base point override")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        if grid:
            p.add_argument("--zmin", type=float, default=-3.0)
            p.add_argument("--zmax", type=float, default=3.0)
            p.add_argument("--samples", type=int, default=241)
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default=fmt)
        if window:
            p.add_argument("--window", type=float, nargs=2, default=None,
                           metavar=("LO", "HI"),
                           help="eigenvalue search window (sampled pairs)")
        if tol:
            p.add_argument("--tol", type=float, default=None,
                           help="override identity tolerances")
        if eps:
            p.add_argument("--eps", default="0.2,0.1,0.05,0.025",
                           help="comma-separated decreasing mollification widths")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check pair invariants")
    add("discriminant", cmd_discriminant,
        "tabulate the Floquet discriminant (CSV plus gaps sidecar)",
        grid=True, fmt="csv")
    add("spectrum", cmd_spectrum, "labeled eigenvalue report",
        grid=True, fmt="json", window=True)
    add("gaps", cmd_gaps, "gap intervals and the kappa sequence")
    add("traces", cmd_traces, "verify the trace identities", tol=True)
    add("converge", cmd_converge, "mollification convergence experiment",
        grid=True, fmt="csv", eps=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _COMPUTE_ERRORS as exc:
        print(f"chspec: computation failed: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"chspec: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
