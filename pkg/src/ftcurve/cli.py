"""Command-line interface: ``ftcurve <verb> ...``.

Exit codes: 0 the checked inequality holds, 1 it is numerically violated,
2 input/output or parse error, 3 a precondition of the check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import comparison, curvature, integral, variation
from .curve import catalog, length, normalize, sample_uniform
from .errors import (BadDims, BadParams, CuspEncountered, CuspError, CurveFileError, DegenerateCurve,
                     DegenerateDirection, DimensionMismatch, InfiniteDistortion, OutOfRange,
                     PreconditionFailed, SearchFailed)
from .io import dumps_csv, dumps_json, read_curve

EXIT_HOLDS, EXIT_VIOLATED, EXIT_IO, EXIT_PRECONDITION = 0, 1, 2, 3

THEOREMS = ("fenchel", "fary-milnor", "chakerian", "schur", "spindle", "wienholtz", "wien2",
            "crofton", "tc-average")

_PRECONDITION_ERRORS = (PreconditionFailed, CuspError, BadDims, DegenerateCurve, DimensionMismatch,
                        InfiniteDistortion, DegenerateDirection, BadParams, OutOfRange)


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


def _report_csv(report: dict) -> str:
    """Scalars as ``key,value`` rows; a list of records becomes a table."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    table = next((k for k, v in report.items() if isinstance(v, list) and v and isinstance(v[0], dict)), None)
    if table is not None:
        rows = report[table]
        keys = list(rows[0])
        w.writerow(keys)
        for r in rows:
            w.writerow([json.dumps(_jsonable(r[k])) if isinstance(r[k], (list, dict)) else r[k] for k in keys])
        return buf.getvalue()
    w.writerow(["key", "value"])
    for k, v in report.items():
        w.writerow([k, json.dumps(_jsonable(v)) if isinstance(v, (list, dict)) else v])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc.strerror}", EXIT_IO) from None
    else:
        sys.stdout.write(text)


def _emit_report(args, report: dict) -> None:
    report = _jsonable(report)
    if args.format == "csv":
        _emit(args, _report_csv(report))
    else:
        _emit(args, json.dumps(report, indent=2, sort_keys=True) + "\n")


def _load(args, path, normalized=True):
    c = read_curve(path, closed=args.closed)
    return normalize(c, args.weld_eps) if normalized else c


# ---------------------------------------------------------------------------
# verbs


def cmd_analyze(args):
    c = _load(args, args.curve)
    _emit_report(args, curvature.analyze(c).to_dict())
    return EXIT_HOLDS


def cmd_sample(args):
    kwargs = {k: getattr(args, k) for k in ("turns", "radius", "pitch", "a") if getattr(args, k) is not None}
    try:
        pc = catalog(args.name, **kwargs)
    except KeyError:
        raise CliError(f"unknown catalog curve {args.name!r}", EXIT_IO) from None
    except TypeError as exc:
        raise CliError(f"bad option for {args.name}: {exc}", EXIT_IO) from None
    lo = 3 if pc.closed else 2
    if not lo <= args.n <= 10**7:
        raise CliError(f"n must lie in [{lo}, 10^7]", EXIT_IO)
    c = sample_uniform(pc, args.n).polygon
    _emit(args, dumps_csv(c) if args.format == "csv" else dumps_json(c))
    return EXIT_HOLDS


def cmd_project(args):
    c = _load(args, args.curve)
    plan = integral.sample_grassmannian(c.dim, args.k, args.seed, 1)[0]
    p = integral.project(c, plan)
    _emit(args, dumps_csv(p) if args.format == "csv" else dumps_json(p))
    return EXIT_HOLDS


def _mc_report(est, target, rel):
    tol = max(3.0 * est.stderr, rel * abs(target))
    r = est.to_dict()
    r.update({"target": target, "tolerance": tol, "holds": abs(est.mean - target) <= tol})
    return r


def cmd_verify(args):
    name = args.theorem
    c = _load(args, args.curve)
    samples = args.samples
    if name == "fenchel":
        if not c.closed:
            raise PreconditionFailed("Fenchel's theorem is about loops", hypothesis="loop")
        tc = curvature.total_curvature(c)
        r = {"tc": tc, "bound": 2 * math.pi, "holds": tc >= 2 * math.pi - 1e-9}
    elif name == "fary-milnor":
        if not c.closed:
            raise PreconditionFailed("needs a loop", hypothesis="loop")
        tc = curvature.total_curvature(c)
        b = integral.bridge_estimate(c, args.seed, samples or 10_000)
        bound = 2 * math.pi * b.min_maxima
        r = {"tc": tc, "min_maxima": b.min_maxima, "bound": bound, "unknot_certified": b.certified,
             "direction": b.direction, "holds": tc >= bound - 1e-9}
    elif name == "chakerian":
        r = comparison.chakerian_check(c).to_dict()
    elif name == "schur":
        if not args.comparison:
            raise CliError("schur needs a second curve file (the planar comparison arc)", EXIT_IO)
        cb = _load(args, args.comparison)
        r = comparison.schur_check(c, cb).to_dict()
    elif name == "spindle":
        rep = curvature.spindle_contains(c, args.phi, edge_samples=args.edge_samples)
        r = rep.to_dict()
        r["holds"] = rep.contained
    elif name == "wienholtz":
        r = comparison.cylinder_search(c, args.seed, samples or 1000).to_dict()
        r["holds"] = r["bound_ok"]
    elif name == "wien2":
        r = comparison.wien2_check(c).to_dict()
    elif name == "crofton":
        r = _mc_report(integral.crofton_length_estimate(c, args.seed, samples or 100_000), length(c), 0.01)
    elif name == "tc-average":
        est = integral.tc_projection_average(c, args.k, args.seed, samples or 100_000)
        r = _mc_report(est, curvature.total_curvature(c), 0.01)
    else:  # argparse restricts choices
        raise CliError(f"unknown theorem {name}", EXIT_IO)
    r = {"theorem": name, **r}
    _emit_report(args, r)
    return EXIT_HOLDS if r["holds"] else EXIT_VIOLATED


def cmd_distortion(args):
    c = _load(args, args.curve)
    _emit_report(args, comparison.distortion(c, grid=args.grid).to_dict())
    return EXIT_HOLDS


def cmd_flow(args):
    c = _load(args, args.curve)
    code = EXIT_HOLDS
    try:
        trace = variation.bending_flow(c, model=args.model, steps=args.steps, lam=args.lam, tol=args.tol)
    except CuspEncountered as exc:
        trace, code = exc.trace, EXIT_PRECONDITION
        print(f"ftcurve: {exc}", file=sys.stderr)
    if args.format == "csv":
        _emit(args, trace.to_csv())
    else:
        _emit_report(args, trace.to_dict())
    if args.final and trace.iterates:
        with open(args.final, "w", encoding="utf-8") as fh:
            fh.write(dumps_json(trace.final))
    return code


def cmd_smooth(args):
    c = _load(args, args.curve)
    _emit_report(args, curvature.smooth_inscribed_arcs(c).to_dict())
    return EXIT_HOLDS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--samples", type=int, default=None, help="Monte-Carlo samples or search starts")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--weld-eps", type=float, default=0.0, help="collapse consecutive vertices closer than this")
    common.add_argument("--closed", action="store_true", help="treat CSV input as a loop")

    p = argparse.ArgumentParser(prog="ftcurve", description="Curvature and comparison theorems for polygonal curves.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("analyze", parents=[common], help="length, TC, TC* and per-vertex data")
    s.add_argument("curve")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sample", parents=[common], help="sample a catalog curve")
    s.add_argument("name", help="circle, helix, log-spiral, trefoil or torus-knot-P-Q")
    s.add_argument("n", type=int)
    s.add_argument("--turns", type=float)
    s.add_argument("--radius", type=float)
    s.add_argument("--pitch", type=float)
    s.add_argument("--a", type=float, help="log-spiral growth rate")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("project", parents=[common], help="project to a random k-plane")
    s.add_argument("curve")
    s.add_argument("--k", type=int, default=2)
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("verify", parents=[common], help="check a theorem on a curve")
    s.add_argument("theorem", choices=THEOREMS)
    s.add_argument("curve")
    s.add_argument("comparison", nargs="?", help="planar comparison arc (schur)")
    s.add_argument("--k", type=int, default=1, help="projection rank (tc-average)")
    s.add_argument("--phi", type=float, default=None, help="spindle half-angle (default: TC)")
    s.add_argument("--edge-samples", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("distortion", parents=[common], help="arclength over chord supremum")
    s.add_argument("curve")
    s.add_argument("--grid", type=int, default=16)
    s.set_defaults(func=cmd_distortion)

    s = sub.add_parser("flow", parents=[common], help="bending-energy descent")
    s.add_argument("curve")
    s.add_argument("--model", choices=curvature.MODELS, default="arc")
    s.add_argument("--steps", type=int, default=500)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--final", default=None, help="write the last iterate as a curve file")
    s.set_defaults(func=cmd_flow)

    s = sub.add_parser("smooth", parents=[common], help="replace corners by inscribed arcs")
    s.add_argument("curve")
    s.set_defaults(func=cmd_smooth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_HOLDS
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ftcurve: {exc}", file=sys.stderr)
        return exc.code
    except CurveFileError as exc:
        print(f"ftcurve: {exc}", file=sys.stderr)
        return EXIT_IO
    except SearchFailed as exc:
        print(f"ftcurve: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except _PRECONDITION_ERRORS as exc:
        print(f"ftcurve: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
