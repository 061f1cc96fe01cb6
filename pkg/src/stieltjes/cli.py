"""Command-line front end.

Subcommands: integrate, transform, hilbert, limits, catalog.  Functions are
named by a small spec language:

    zoo:<name>[:<param>...]   catalog entry, e.g. zoo:step2pi:0.5
    poly:t | poly:t2 | poly:t3
    const:<value>
    file:<path>               JSON: {"kind": "zoo"|"step"|"const", ...}

Reports are CSV (header line, one record per line, floats at 12 significant
digits) or, with --format structured, a single JSON document carrying the
same fields.  Output is deterministic for a fixed seed: records are ordered
by grid index no matter how many workers run, and nothing timestamps.

Exit codes: 0 ok, 1 usage or spec error, 2 divergence, 3 inconclusive or a
failed limit grade, 4 evaluation at a declared jump.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from . import zoo
from .core import BoundaryFunction, DiskPoint, RSStatus
from .limits import analytic_limit_check, conjugate_limit_check, poisson_limit_check
from .quadrature import NonConvergentError, QuadratureOptions, rs_integral
from .singular import JumpAtEvaluationPoint, hilbert_stieltjes, singular_cauchy_consistency
from .transforms import (
    cauchy_stieltjes,
    conj_poisson_stieltjes,
    poisson_stieltjes,
    schwartz_stieltjes,
)

__all__ = ["main", "main_entry"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGED = 2
EXIT_INCONCLUSIVE = 3
EXIT_JUMP = 4

_STATUS_EXIT = {
    RSStatus.CONVERGED: EXIT_OK,
    RSStatus.DIVERGED: EXIT_DIVERGED,
    RSStatus.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


class SpecError(ValueError):
    """A function spec string or file could not be understood."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit((self.prog + ": error: " + message + "\n", EXIT_USAGE))


def _poly(power: int):
    return lambda t: np.asarray(t, dtype=float) ** power


def _from_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read function file {path}: {exc}") from exc
    kind = doc.get("kind")
    if kind == "zoo":
        return zoo.make(doc["name"], *doc.get("params", []))
    if kind == "const":
        v = float(doc["value"])
        return lambda t: np.full_like(np.asarray(t, dtype=float), v)
    if kind == "step":
        jumps = tuple((float(loc), float(h)) for loc, h in doc.get("jumps", []))
        return BoundaryFunction(
            name=doc.get("name", "file_step"),
            kind="step",
            jumps=jumps,
            base=float(doc.get("base", 0.0)),
            period_increment=sum(h for _loc, h in jumps),
            bounded_by=abs(float(doc.get("base", 0.0))) + sum(abs(h) for _l, h in jumps),
        )
    raise SpecError(f"unknown kind {kind!r} in function file {path}")


def parse_function_spec(spec: str):
    """Turn a spec string into an evaluator (callable or BoundaryFunction)."""
    head, _, rest = spec.partition(":")
    try:
        if head == "zoo":
            name, *params = rest.split(":")
            return zoo.make(name, *[float(p) for p in params])
        if head == "poly":
            powers = {"t": 1, "t2": 2, "t3": 3}
            if rest not in powers:
                raise SpecError(f"poly supports t, t2, t3; got {rest!r}")
            return _poly(powers[rest])
        if head == "const":
            v = float(rest)
            return lambda t: np.full_like(np.asarray(t, dtype=float), v)
        if head == "file":
            return _from_file(rest)
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"bad function spec {spec!r}: {exc}") from exc
    raise SpecError(f"unknown function spec {spec!r}")


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _write_report(path: Optional[str], header, rows, structured: bool):
    if structured:
        doc = {"fields": list(header), "records": [
            {k: (v if isinstance(v, str) else float(v)) for k, v in zip(header, row)}
            for row in rows
        ]}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _default_tol(args_tol: Optional[float]) -> float:
    if args_tol is not None:
        return args_tol
    env = os.environ.get("STIELTJES_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise SpecError(f"STIELTJES_TOL is not a number: {env!r}")
    return 1e-6


def _opts(args) -> QuadratureOptions:
    return QuadratureOptions(rel_tol=_default_tol(args.tol), seed=args.seed)


def _floats(values) -> list:
    return [float(v) for v in values]


def _cmd_integrate(args) -> int:
    g = parse_function_spec(args.g)
    f = parse_function_spec(args.f)
    res = rs_integral(g, f, args.a, args.b, _opts(args))
    val = complex(res.value)
    header = ["status", "value", "value_im", "est_error", "levels", "deepest_mesh"]
    rows = [[res.status.value, val.real, val.imag, res.est_error,
             len(res.levels), res.levels[-1][0]]]
    _write_report(args.out, header, rows, args.format == "structured")
    return _STATUS_EXIT[res.status]


_TRANSFORMS = {
    "U": poisson_stieltjes,
    "V": conj_poisson_stieltjes,
    "S": schwartz_stieltjes,
    "C": cauchy_stieltjes,
}


def _cmd_transform(args) -> int:
    phi = parse_function_spec(args.phi)
    if not isinstance(phi, BoundaryFunction):
        raise SpecError("transforms need a boundary function (zoo: or file:)")
    op = _TRANSFORMS[args.which]
    opts = _opts(args)
    grid = [(r, th) for r in _floats(args.r) for th in _floats(args.theta)]

    def run(point):
        r, th = point
        res = op(phi, DiskPoint(r, th), opts)
        v = complex(res.value)
        return [r, th, v.real, v.imag, res.est_error, res.status.value]

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(run, grid))
    else:
        rows = [run(p) for p in grid]
    header = ["r", "theta", "value", "value_im", "est_error", "status"]
    _write_report(args.out, header, rows, args.format == "structured")
    worst = max((row[5] for row in rows), key=lambda s: _STATUS_EXIT[RSStatus(s)])
    return _STATUS_EXIT[RSStatus(worst)]


def _cmd_hilbert(args) -> int:
    phi = parse_function_spec(args.phi)
    if not isinstance(phi, BoundaryFunction):
        raise SpecError("the principal-value integral needs a boundary function")
    opts = _opts(args)
    header = ["tau", "value", "est_error", "extrapolated"]
    if args.compare_singular_cauchy:
        header += ["consistency_residual", "cauchy_imag"]
    rows = []
    for tau in _floats(args.tau):
        if args.compare_singular_cauchy:
            con = singular_cauchy_consistency(phi, tau, opts=opts)
            h = con.hilbert
            rows.append([tau, float(np.real(h.value)), h.est_error,
                         int(h.extrapolated), con.residual, con.imag_magnitude])
        else:
            h = hilbert_stieltjes(phi, tau, opts=opts)
            rows.append([tau, float(np.real(h.value)), h.est_error, int(h.extrapolated)])
    _write_report(args.out, header, rows, args.format == "structured")
    return EXIT_OK


_LIMIT_CHECKS = {
    "U": poisson_limit_check,
    "V": conjugate_limit_check,
    "SC": analytic_limit_check,
}


def _cmd_limits(args) -> int:
    phi = parse_function_spec(args.phi)
    if not isinstance(phi, BoundaryFunction):
        raise SpecError("limit checks need a boundary function")
    check = _LIMIT_CHECKS[args.which]
    kwargs = {}
    if args.apertures is not None:
        kwargs["apertures"] = _floats(args.apertures)
    if args.tol is not None:
        kwargs["tol"] = args.tol
    header = ["target", "field", "approach", "extrapolated", "extrapolated_im",
              "expected", "expected_im", "residual", "grade"]
    rows = []
    any_fail = False
    for target in _floats(args.target):
        report = check(phi, target, **kwargs)
        any_fail = any_fail or not report.passed
        for row in report.rows:
            ext = complex(row.estimate.extrapolated)
            exp = complex(row.expected)
            rows.append([target, row.field, row.approach, ext.real, ext.imag,
                         exp.real, exp.imag, row.residual, row.grade])
    _write_report(args.out, header, rows, args.format == "structured")
    return EXIT_INCONCLUSIVE if any_fail else EXIT_OK


def _cmd_catalog(args) -> int:
    header = ["name", "kind", "atoms", "net_increment", "bound"]
    rows = []
    for phi in zoo.catalog():
        atoms = ";".join(f"{loc:.6g}@{h:.6g}" for loc, h in phi.jumps) or "-"
        bound = phi.bounded_by if phi.bounded_by is not None else float("nan")
        rows.append([phi.name, phi.kind, atoms, phi.period_increment, bound])
    _write_report(args.out, header, rows, args.format == "structured")
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="stieltjes", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None,
                       help="relative tolerance (default: STIELTJES_TOL or 1e-6)")
        p.add_argument("--seed", type=int, default=0, help="tag-replica seed")
        p.add_argument("--out", default=None, help="report file (default stdout)")
        p.add_argument("--format", choices=("csv", "structured"), default="csv")

    p = sub.add_parser("integrate", help="Riemann-Stieltjes integral of g against df")
    p.add_argument("--g", required=True, help="integrand spec")
    p.add_argument("--f", required=True, help="integrator spec")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    common(p)
    p.set_defaults(run=_cmd_integrate)

    p = sub.add_parser("transform", help="disk transforms on an r x theta grid")
    p.add_argument("--phi", required=True, help="integrator spec")
    p.add_argument("--which", choices=tuple(_TRANSFORMS), required=True)
    p.add_argument("--r", nargs="+", required=True)
    p.add_argument("--theta", nargs="+", required=True)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(run=_cmd_transform)

    p = sub.add_parser("hilbert", help="principal-value boundary integral")
    p.add_argument("--phi", required=True)
    p.add_argument("--tau", nargs="+", required=True)
    p.add_argument("--compare-singular-cauchy", action="store_true")
    common(p)
    p.set_defaults(run=_cmd_hilbert)

    p = sub.add_parser("limits", help="graded boundary-limit checks")
    p.add_argument("--phi", required=True)
    p.add_argument("--which", choices=tuple(_LIMIT_CHECKS), required=True)
    p.add_argument("--target", nargs="+", required=True, help="boundary angles")
    p.add_argument("--apertures", nargs="*", default=None)
    common(p)
    p.set_defaults(run=_cmd_limits)

    p = sub.add_parser("catalog", help="list built-in boundary functions")
    common(p)
    p.set_defaults(run=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, tuple):
            msg, code = exc.code
            sys.stderr.write(msg)
            return code
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except SpecError as exc:
        sys.stderr.write(f"stieltjes: {exc}\n")
        return EXIT_USAGE
    except JumpAtEvaluationPoint as exc:
        sys.stderr.write(f"stieltjes: {exc}\n")
        return EXIT_JUMP
    except NonConvergentError as exc:
        sys.stderr.write(f"stieltjes: {exc}\n")
        return EXIT_DIVERGED
    except ValueError as exc:
        sys.stderr.write(f"stieltjes: {exc}\n")
        return EXIT_USAGE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
