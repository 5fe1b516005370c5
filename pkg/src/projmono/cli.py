"""Command-line interface.

JSON reports go to standard output (or ``--json-out``), a short human summary
to standard error.  Exit codes: 0 success, 2 parse/config errors, 3 numerical
failures, 4 certification failures.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys

from . import __version__
from .classify import candidate_points, classify_point, cone_check, scan
from .config import Config
from .errors import CertificationFailure, ContractError, NumericalFailure, ProjMonoError
from .focal import LineFamilyChart, focal_poly
from .grammar import parse_point, parse_points_file, parse_poly_file
from .pencil import branch_points, branch_points_json, build_pencil, make_center
from .scalars import QQi

SCHEMA = 1
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_CERTIFICATION = 0, 2, 3, 4


def _clean(obj):
    """JSON-safe copy (complex -> [re, im], numpy scalars -> Python, non-finite -> str)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, QQi):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "item"):
        return _clean(obj.item())
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    return str(obj)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ContractError(f"cannot read {path}: {exc.strerror}") from None


def _config(args) -> Config:
    return Config(seed=args.seed, sections=args.sections, cluster_tol=args.tol_cluster,
                  workers=args.workers, json_out=args.json_out)


def cmd_analyze_point(args, config):
    f = parse_poly_file(_read(args.file))
    P = parse_point(args.point)
    report = classify_point(f, P, config)
    out = report.to_json(with_loops=args.loops)
    if f.num_vars > 3:
        out["cone"] = cone_check(f).to_json()
    summary = (f"verdict={report.verdict} order={report.order} galois={report.galois} "
               f"decomposable={report.decomposable} ({report.evidence})")
    return out, summary


def cmd_scan(args, config):
    f = parse_poly_file(_read(args.file))
    if args.auto:
        cands = candidate_points(f, seed=config.seed)
    else:
        cands = parse_points_file(_read(args.candidates))
    rows, summary = scan(f, cands, config)
    text = " ".join(f"{k}={v}" for k, v in summary.items())
    return {"candidates": len(cands), "reports": rows, "summary": summary}, text


def cmd_branch_locus(args, config):
    f = parse_poly_file(_read(args.file))
    center = make_center(f, parse_point(args.point), config.center_off_x_threshold)
    chart = build_pencil(f, center, seed=config.seed, retries=config.retry_cap)
    pts = branch_points(chart, config.cluster_tol)
    rows = branch_points_json(pts)
    n_simple = sum(r["simple"] for r in rows)
    return {"degree": chart.d, "branch_points": rows}, f"{len(rows)} branch points ({n_simple} simple)"


def cmd_focal(args, config):
    fam = LineFamilyChart.from_text(_read(args.family))
    if args.u is not None:
        u = parse_point(args.u)
    else:
        rng = random.Random(config.seed)
        u = [QQi(rng.randint(-300, 300), rng.randint(-300, 300)) / 97 for _ in range(fam.n)]
    spec = focal_poly(fam, u, config.cluster_tol)
    out = {"u": [str(x) for x in u], **spec.to_json()}
    roots = ", ".join(f"{c.center:.6g} (x{c.multiplicity})" for c in spec.clusters)
    return out, f"focal degree {spec.focal_poly.degree()} + drop {spec.degree_drop}: {roots or 'none'}"


def build_parser():
    parser = argparse.ArgumentParser(prog="projmono",
                                     description="Monodromy of projections of hypersurfaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--sections", type=int, default=3, help="plane sections for n >= 2")
    common.add_argument("--tol-cluster", type=float, default=Config.cluster_tol)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--json-out", default=None, help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-point", parents=[common], help="classify one center")
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.add_argument("--loops", action="store_true", help="include per-loop records")
    p.set_defaults(func=cmd_analyze_point)

    p = sub.add_parser("scan", parents=[common], help="classify a list of centers")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--candidates")
    g.add_argument("--auto", action="store_true", help="generate candidates")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("branch-locus", parents=[common], help="branch points and profiles")
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_branch_locus)

    p = sub.add_parser("focal", parents=[common], help="focal spectrum of a line family")
    p.add_argument("family")
    p.add_argument("--u", default=None, help="parameter sample, e.g. '1/3, 2'")
    p.set_defaults(func=cmd_focal)
    return parser


def _emit(payload, path):
    text = json.dumps(_clean(payload), indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    head = {"schema": SCHEMA, "command": args.command}
    try:
        config = _config(args)
        head["config"] = config.to_json()
        result, summary = args.func(args, config)
    except ProjMonoError as exc:
        if isinstance(exc, CertificationFailure):
            code = EXIT_CERTIFICATION
        elif isinstance(exc, NumericalFailure):
            code = EXIT_NUMERICAL
        else:
            code = EXIT_CONFIG
        err = {"kind": type(exc).__name__, "message": str(exc),
               "diagnostics": getattr(exc, "diagnostics", {})}
        _emit({**head, "error": err}, args.json_out)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    _emit({**head, "result": result}, args.json_out)
    print(summary, file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
