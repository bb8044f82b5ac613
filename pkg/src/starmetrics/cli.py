"""Command-line front end.

    starbody dist A.json B.json --metric {radial,awr,aw,hausdorff,gap}
    starbody dual K.json --map {phi,flower,polar,inversion-check,union-check}
    starbody seq NAME --candidate TAG|PATH --n-max 60 --out report.json
    starbody check --suite {metric-axioms,inequalities,duality,truncation,all}

Exit codes: 0 success, 1 failed invariant (check), 2 parse error,
3 dimension mismatch, 4 precondition failure, 5 flower/polar of a non-seed.
"""
import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bodies import ConvexSeed
from .catalog import CORPUS_NAMES, corpus
from .checks import SUITES, run_suite
from .convergence import analyze
from .dualities import flower, flower_union_check, inversion_check, polar, star_dual
from .euclidean import aw_distance, hausdorff
from .extended import to_json
from .grid import grid_slack, make_grid
from .radial import (J_MAX, radial_aw_distance, radial_distance_sup_gap, radial_metric)
from .specfiles import SpecError, load_body, parse_grid, sampled_spec

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_DIM, EXIT_PRECONDITION, EXIT_NOT_SEED = 0, 1, 2, 3, 4, 5
DEFAULT_COUNTS = {2: 2048, 3: 4096}
GRID_ENV = "STARBODY_GRID_COUNT"


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _default_count(d):
    env = os.environ.get(GRID_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError(EXIT_PARSE, f"{GRID_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_COUNTS.get(d, 4096)


def build_grid(args, d, bodies=()):
    """Grid from the flags, plus the spike directions of the given bodies."""
    try:
        if args.grid_spec:
            with open(args.grid_spec, encoding="utf-8") as fh:
                g = parse_grid(json.load(fh), d)
        else:
            count = args.grid_count or _default_count(d)
            g = make_grid(d, count, args.grid_seed, args.symmetric)
    except (OSError, json.JSONDecodeError, SpecError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"bad grid: {exc}") from None
    feats = [u for b in bodies for u in b.features]
    return g.with_directions(feats) if feats else g


def _load(path):
    try:
        return load_body(path)
    except SpecError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None


def _star(obj):
    return obj.as_body() if isinstance(obj, ConvexSeed) else obj


def envelope(argv, grid, payload, started, warnings=(), lipschitz=1.0):
    return {"tool": "starmetrics", "version": __version__,
            "grid": {"count": len(grid), "seed": grid.seed, "symmetric": grid.symmetric,
                     "resolution": grid.resolution, "eps_g": grid_slack(grid, lipschitz)},
            "command": list(argv), "payload": payload, "warnings": list(warnings),
            "wall_time_s": round(time.perf_counter() - started, 6)}


def dumps(doc):
    return json.dumps(_clean(doc), sort_keys=True, indent=2)


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return None if x != x else to_json(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    return x


def _csv_payload(payload):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["key", "value"])

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else str(k), x[k])
        elif isinstance(x, list):
            for i, v in enumerate(x):
                walk(f"{prefix}[{i}]", v)
        else:
            w.writerow([prefix, x])

    walk("", _clean(payload))
    return out.getvalue()


def _emit(args, env):
    if getattr(args, "format", "json") == "csv":
        sys.stdout.write(_csv_payload(env["payload"]))
    else:
        sys.stdout.write(dumps(env) + "\n")


# --------------------------------------------------------------------- dist

def cmd_dist(args, argv):
    started = time.perf_counter()
    a, b = _star(_load(args.body_a)), _star(_load(args.body_b))
    if a.dimension != b.dimension:
        raise CliError(EXIT_DIM, f"dimension mismatch: {a.dimension} vs {b.dimension}")
    if args.j_max < 1:
        raise CliError(EXIT_PRECONDITION, "--j-max must be at least 1")
    grid = build_grid(args, a.dimension, (a, b))
    warnings = []
    unbounded = not (np.all(np.isfinite(a.rho(grid.directions)))
                     and np.all(np.isfinite(b.rho(grid.directions))))
    payload = {"metric": args.metric, "body_a": a.name, "body_b": b.name}
    if args.metric == "radial":
        if unbounded:
            warnings.append("unbounded body: |inf - inf| is counted as 0")
        payload["value"] = radial_metric(a, b, grid)
    elif args.metric == "awr":
        payload.update(radial_aw_distance(a, b, grid, args.j_max).as_dict())
    elif args.metric == "aw":
        res = aw_distance(a, b, grid, args.j_max)
        warnings.extend(res.flags)
        payload.update(res.as_dict())
    elif args.metric == "hausdorff":
        if unbounded:
            warnings.append("unbounded body: the Hausdorff distance may be infinite")
        payload.update(hausdorff(a, b, grid).as_dict())
    else:
        radius = args.radius
        if radius is None:
            finite = np.concatenate([a.rho(grid.directions), b.rho(grid.directions)])
            finite = finite[np.isfinite(finite)]
            radius = float(finite.max()) if finite.size and finite.max() > 0 else 1.0
        if not radius > 0:
            raise CliError(EXIT_PRECONDITION, "--radius must be positive")
        payload["radius"] = radius
        payload["value"] = radial_distance_sup_gap(a, b, radius, grid)
    _emit(args, envelope(argv, grid, payload, started, warnings))
    return EXIT_OK


# --------------------------------------------------------------------- dual

def _boundary_samples(K, count):
    g = make_grid(K.dimension, count)
    rho = np.minimum(K.radial(g.directions), 10.0)
    return np.vstack([np.zeros(K.dimension), rho[:, None] * g.directions])


def cmd_dual(args, argv):
    started = time.perf_counter()
    obj = _load(args.body)
    if args.map in ("flower", "polar", "union-check") and not isinstance(obj, ConvexSeed):
        raise CliError(EXIT_NOT_SEED, f"--map {args.map} needs a convex_seed body")
    grid = build_grid(args, obj.dimension, (_star(obj),))
    payload = {"map": args.map, "body": obj.name}
    try:
        if args.map == "phi":
            payload["profile"] = sampled_spec(star_dual(_star(obj)), grid)
        elif args.map == "flower":
            payload["profile"] = sampled_spec(flower(obj, grid).body, grid)
        elif args.map == "polar":
            payload["profile"] = sampled_spec(polar(obj, grid), grid)
        elif args.map == "inversion-check":
            payload["report"] = inversion_check(_star(obj), grid, args.samples)
        else:
            payload["report"] = flower_union_check(obj, grid, _boundary_samples(obj, args.samples))
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    _emit(args, envelope(argv, grid, payload, started))
    return EXIT_OK


# ---------------------------------------------------------------------- seq

def cmd_seq(args, argv):
    started = time.perf_counter()
    try:
        seq = corpus(args.corpus, args.dim)
    except KeyError as exc:
        raise CliError(EXIT_PARSE, str(exc.args[0])) from None
    except ValueError as exc:
        raise CliError(EXIT_DIM, str(exc)) from None
    if args.n_max < 10:
        raise CliError(EXIT_PRECONDITION, "--n-max must be at least 10")
    if args.candidate in seq.candidates:
        candidate, tag = seq.candidate(args.candidate), args.candidate
    elif Path(args.candidate).exists():
        candidate, tag = _star(_load(args.candidate)), args.candidate
    else:
        raise CliError(EXIT_PARSE, f"candidate {args.candidate!r} is neither a file nor one of "
                                   f"{sorted(seq.candidates)}")
    if candidate.dimension != seq.dimension:
        raise CliError(EXIT_DIM, "candidate and sequence dimensions differ")
    grid = build_grid(args, seq.dimension)
    report = analyze(seq, candidate, args.n_max, grid, candidate_tag=tag)
    env = envelope(argv, grid, report.as_dict(), started, lipschitz=seq.lipschitz)
    if args.out:
        out = Path(args.out)
        out.write_text(dumps(env) + "\n", encoding="utf-8")
        with open(out.with_suffix(".csv"), "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "notion", "value"])
            for n, notion, v in report.csv_rows():
                w.writerow([n, notion, "" if v != v else repr(float(v))])
        for k, e in report.notions.items():
            print(f"{k:17s} {e.verdict:13s} {e.reason}")
        for note in report.notes:
            print(f"note: {note}")
    else:
        _emit(args, env)
    return EXIT_OK


# -------------------------------------------------------------------- check

def cmd_check(args, argv):
    started = time.perf_counter()
    if args.trials < 1:
        raise CliError(EXIT_PRECONDITION, "--trials must be at least 1")
    grids = None
    if args.grid_count or os.environ.get(GRID_ENV):
        count = args.grid_count or _default_count(2)
        grids = [make_grid(2, count), make_grid(3, count)]
    res = run_suite(args.suite, args.trials, args.seed, grids)
    failed = sum(v["violations"] for v in res.values())
    for name, v in res.items():
        status = "pass" if v["violations"] == 0 else "FAIL"
        print(f"{status}  {name}: {v['violations']} violations / {v['checked']} checked")
    grid = grids[0] if grids else make_grid(2, 256)
    if args.format == "json":
        print(dumps(envelope(argv, grid, {"suite": args.suite, "results": res}, started)))
    return EXIT_CHECK if failed else EXIT_OK


# ------------------------------------------------------------------- parser

def _grid_flags(p):
    p.add_argument("--grid-count", type=int, default=None,
                   help=f"directions in the grid (default 2048 in d=2, 4096 otherwise; "
                        f"{GRID_ENV} overrides the default)")
    p.add_argument("--grid-seed", type=int, default=0)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--grid-spec", default=None, help="JSON grid spec file")


def build_parser():
    parser = argparse.ArgumentParser(prog="starbody", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two bodies")
    p.add_argument("body_a")
    p.add_argument("body_b")
    p.add_argument("--metric", choices=["radial", "awr", "aw", "hausdorff", "gap"],
                   default="radial")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--j-max", type=int, default=J_MAX)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _grid_flags(p)

    p = sub.add_parser("dual", help="star duality, flowers and polars")
    p.add_argument("body")
    p.add_argument("--map", choices=["phi", "flower", "polar", "inversion-check",
                                     "union-check"], default="phi")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _grid_flags(p)

    p = sub.add_parser("seq", help="convergence report for a corpus sequence")
    p.add_argument("corpus", help=f"one of {', '.join(CORPUS_NAMES)}")
    p.add_argument("--candidate", required=True)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _grid_flags(p)

    p = sub.add_parser("check", help="randomized invariant suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    _grid_flags(p)
    return parser


COMMANDS = {"dist": cmd_dist, "dual": cmd_dual, "seq": cmd_seq, "check": cmd_check}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
