"""Command-line interface.

Subcommands: ``center``, ``riccati``, ``radius``, ``transform``, ``gen``,
``check``. Results are JSON documents written to ``--out`` (default stdout).

Exit codes::

    0  success
    2  parse error (bad arguments or model file)
    3  infeasible (model not strictly passive, X not strictly feasible)
    4  not converged (center) or checks failed (check)
    5  numerical failure
"""
import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .bilinear import cayley_c2d, cayley_d2c
from .center import CenterOptions, compute_analytic_center, verify_center_spectrum
from .errors import (
    BoundaryError,
    BoundarySpectrumError,
    ModelFileError,
    NotStrictlyPassiveError,
    PassivityError,
)
from .io import dumps, encode_matrix, model_to_dict, read_model
from .lmi import eval_W, stationarity_residual
from .model import CONTINUOUS, DISCRETE, random_passive_model
from .radius import probe_perturbations, x_passivity_bound
from .riccati import riccati_residual, solve_extremal

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_PARSE", "EXIT_INFEASIBLE", "EXIT_NOT_CONVERGED", "EXIT_NUMERIC"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_CONVERGED = 4
EXIT_NUMERIC = 5

INIT_NAMES = {"geomean": "geometric_mean", "shifted": "shifted_riccati", "identity": "identity", "given": "given"}
TRACE_COLUMNS = ("iter", "barrier", "decrement", "residual", "alpha", "wallclock_seconds")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("usage", EXIT_PARSE, message)
        raise SystemExit(EXIT_PARSE)


def _emit_error(kind, code, message, field=None):
    doc = {"error": kind, "exit_code": code, "message": str(message)}
    if field is not None:
        doc["field"] = field
    sys.stderr.write(json.dumps(doc) + "\n")


def _add_out(p):
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")


def _add_solver(p):
    p.add_argument("--method", choices=("newton", "ascent"), default="newton")
    p.add_argument("--tol", type=float, default=1e-8, help="stationarity tolerance, relative to 1 + ||X||")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--init", choices=tuple(INIT_NAMES), default="geomean")
    p.add_argument("--xi", type=float, default=None, help="shift for --init shifted")


def build_parser():
    parser = _Parser(prog="passivity-center", description="Analytic center of passivity LMIs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("center", help="compute the analytic center")
    p.add_argument("input")
    _add_solver(p)
    p.add_argument("--trace", metavar="PATH", help="write the iteration trace as CSV")
    _add_out(p)

    p = sub.add_parser("riccati", help="extremal Riccati solutions")
    p.add_argument("input")
    _add_out(p)

    p = sub.add_parser("radius", help="passivity-radius lower bound at X (file X or the center)")
    p.add_argument("input")
    _add_solver(p)
    p.add_argument("--samples", type=int, default=100, help="random perturbation probes (0 disables)")
    p.add_argument("--margin", type=float, default=0.5, help="probe norm as a fraction of the bound")
    p.add_argument("--seed", type=int, default=0)
    _add_out(p)

    p = sub.add_parser("transform", help="Cayley transform to the other time domain")
    p.add_argument("input")
    _add_out(p)

    p = sub.add_parser("gen", help="random strictly passive model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--domain", choices=(CONTINUOUS, DISCRETE), default=CONTINUOUS)
    p.add_argument("--complex", action="store_true", help="complex-valued data")
    _add_out(p)

    p = sub.add_parser("check", help="check that the X in a model file is the analytic center")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=1e-8)
    _add_out(p)
    return parser


def _write(args, doc):
    text = dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _eigs(v):
    return [[float(z.real), float(z.imag)] for z in np.sort_complex(np.asarray(v, dtype=complex))]


def _spectrum_doc(report):
    doc = {k: v for k, v in report.items() if k != "eigenvalues"}
    doc["eigenvalues"] = _eigs(report["eigenvalues"])
    return doc


def _options(args):
    if args.max_iter is not None and args.max_iter < 0:
        raise ModelFileError("--max-iter must be non-negative", "max_iter")
    try:
        return CenterOptions(
            method=args.method,
            tol_residual=args.tol,
            max_iter=args.max_iter,
            init=INIT_NAMES[args.init],
            xi=args.xi,
        )
    except ValueError as exc:
        raise ModelFileError(str(exc), "options") from exc


def _solve(args, model, weight, X):
    opts = _options(args)
    if opts.init == "given" and X is None:
        raise ModelFileError("--init given requires an X entry in the model file", "X")
    return compute_analytic_center(model, opts, weight=weight, x0=X if opts.init == "given" else None)


def _write_trace(path, records):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_COLUMNS)
        for r in records:
            w.writerow([r.iter] + [repr(float(v)) for v in r[1:]])


def _center_doc(model, weight, result):
    X = result.x_center
    ev = eval_W(model, X, weight)
    return {
        "command": "center",
        "converged": bool(result.converged),
        "message": result.message,
        "method": result.method,
        "init": result.init_used,
        "iterations": result.n_iter,
        "x_center": encode_matrix(X),
        "barrier": float(result.barrier_value),
        "log_det_W": float(-result.barrier_value),
        "min_eig_W": float(ev.min_eig_W),
        "stationarity_residual": float(stationarity_residual(model, X, weight)),
        "spectrum": _spectrum_doc(verify_center_spectrum(model, X, weight)),
    }


def cmd_center(args):
    model, weight, X = read_model(args.input)
    result = _solve(args, model, weight, X)
    if args.trace:
        _write_trace(args.trace, result.iterations)
    _write(args, _center_doc(model, weight, result))
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_riccati(args):
    model, weight, _ = read_model(args.input)
    pair = solve_extremal(model, weight)
    doc = {"command": "riccati", "time_domain": model.time_domain}
    for key, X in (("x_min", pair.x_min), ("x_max", pair.x_max)):
        doc[key] = encode_matrix(X)
        doc[key + "_residual"] = float(np.linalg.norm(riccati_residual(model, X, weight)))
    doc["gap_min_eig"] = float(pair.gap)
    doc["closed_loop_spectra"] = [_eigs(s) for s in pair.closed_loop_spectra]
    _write(args, doc)
    return EXIT_OK


def cmd_radius(args):
    model, weight, X = read_model(args.input)
    if weight is not None:
        raise ModelFileError("weight: radius bounds are defined for plain models only", "weight")
    source = "file"
    if X is None:
        result = _solve(args, model, weight, None)
        if not result.converged:
            raise _NotConverged("center computation did not converge")
        X, source = result.x_center, "analytic_center"
    bound = x_passivity_bound(model, X)
    doc = {
        "command": "radius",
        "domain": bound.domain,
        "approximate": bool(bound.approximate),
        "value": float(bound.value),
        "x_source": source,
        "x_used": encode_matrix(bound.x_used),
    }
    if args.samples > 0:
        rep = probe_perturbations(model, X, bound, samples=args.samples, margin=args.margin, seed=args.seed)
        doc["probes"] = [dict(margin=mu, **v) for mu, v in rep.items()]
    _write(args, doc)
    return EXIT_OK


def cmd_transform(args):
    model, weight, X = read_model(args.input)
    tm = cayley_d2c(model, weight) if model.is_discrete else cayley_c2d(model, weight)
    doc = model_to_dict(tm.model, tm.weight, X)
    doc["det_ratio"] = float(tm.det_ratio)
    _write(args, doc)
    return EXIT_OK


def cmd_gen(args):
    if args.n < 1 or args.m < 1:
        raise ModelFileError("--n and --m must be positive", "n")
    model = random_passive_model(args.n, args.m, args.seed, args.domain, complex_data=args.complex)
    _write(args, model_to_dict(model))
    return EXIT_OK


def cmd_check(args):
    model, weight, X = read_model(args.input)
    if X is None:
        raise ModelFileError("X: required for check", "X")
    ev = eval_W(model, X, weight)
    if not ev.feasible_strict:
        raise BoundaryError("X is not strictly feasible", ev.min_eig_W)
    res = stationarity_residual(model, X, weight)
    spec = verify_center_spectrum(model, X, weight)
    stationary = res <= args.tol * (1.0 + np.linalg.norm(X))
    passed = bool(stationary and spec["spectrum_ok"])
    _write(args, {
        "command": "check",
        "passed": passed,
        "stationarity_residual": float(res),
        "stationary": bool(stationary),
        "spectrum": _spectrum_doc(spec),
    })
    return EXIT_OK if passed else EXIT_NOT_CONVERGED


class _NotConverged(Exception):
    pass


COMMANDS = {
    "center": cmd_center,
    "riccati": cmd_riccati,
    "radius": cmd_radius,
    "transform": cmd_transform,
    "gen": cmd_gen,
    "check": cmd_check,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except ModelFileError as exc:
        _emit_error("parse", EXIT_PARSE, exc, exc.field)
        return EXIT_PARSE
    except (NotStrictlyPassiveError, BoundaryError, BoundarySpectrumError) as exc:
        _emit_error("infeasible", EXIT_INFEASIBLE, exc)
        return EXIT_INFEASIBLE
    except _NotConverged as exc:
        _emit_error("not_converged", EXIT_NOT_CONVERGED, exc)
        return EXIT_NOT_CONVERGED
    except (PassivityError, np.linalg.LinAlgError) as exc:
        _emit_error("numeric", EXIT_NUMERIC, exc)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
