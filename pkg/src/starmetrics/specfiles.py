"""JSON body specifications and CSV/JSON profile exchange.

Body spec: {"dim": int, "kind": "closed_form" | "sampled" | "convex_seed",
"name": str, "params": {...}}.  Grid spec: {"count": int, "seed": int,
"symmetric": bool} with an optional "extra" list of directions appended to the
grid.  +inf is written as the string "inf".
"""
import csv
import io
import json

import numpy as np

from . import bodies as bd
from .catalog import CORPUS_NAMES, corpus
from .extended import from_json, to_json
from .grid import make_grid


class SpecError(ValueError):
    """Malformed or unknown body/grid specification."""


def _vec(params, key, dim):
    try:
        v = np.asarray(params[key], dtype=float)
    except KeyError:
        raise SpecError(f"missing parameter {key!r}") from None
    except (TypeError, ValueError):
        raise SpecError(f"parameter {key!r} must be a list of numbers") from None
    if v.shape != (dim,):
        raise SpecError(f"parameter {key!r} must have {dim} coordinates")
    if not np.any(v):
        raise SpecError(f"parameter {key!r} must be nonzero")
    return v


def _num(params, key, default=None):
    if key not in params:
        if default is None:
            raise SpecError(f"missing parameter {key!r}")
        return default
    try:
        return from_json(params[key])
    except (TypeError, ValueError) as exc:
        raise SpecError(f"parameter {key!r}: {exc}") from None


def _corpus_body(d, p):
    try:
        seq = corpus(p["sequence"], d)
        n = int(p["n"])
        return seq.body(n)
    except KeyError as exc:
        raise SpecError(f"corpus body needs 'sequence' in {list(CORPUS_NAMES)} and 'n' "
                        f"({exc})") from None
    except ValueError as exc:
        raise SpecError(str(exc)) from None


CLOSED_FORMS = {
    "ball": lambda d, p: bd.ball(d, _num(p, "radius", 1.0)),
    "origin": lambda d, p: bd.origin(d),
    "whole_space": lambda d, p: bd.whole_space(d),
    "segment": lambda d, p: bd.segment(_vec(p, "point", d)) if "point" in p
    else bd.segment(_vec(p, "direction", d), _num(p, "length", 1.0)),
    "symmetric_segment": lambda d, p: bd.symmetric_segment(_vec(p, "direction", d),
                                                           _num(p, "length", 1.0)),
    "ray": lambda d, p: bd.ray(_vec(p, "direction", d)),
    "halfspace": lambda d, p: bd.halfspace(_vec(p, "normal", d)),
    "open_halfspace": lambda d, p: bd.open_halfspace(_vec(p, "normal", d)),
    "corpus": _corpus_body,
}


def _polygon(d, p):
    if d != 2:
        raise SpecError("polygons are planar")
    try:
        return bd.seed_polygon(p["vertices"])
    except KeyError:
        raise SpecError("missing parameter 'vertices'") from None
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _planar(make):
    def build(d, p):
        if d != 2:
            raise SpecError("this seed is planar (dim 2)")
        return make(p)
    return build


SEEDS = {
    "ball": lambda d, p: bd.seed_ball(d, _num(p, "radius", 1.0)),
    "segment": lambda d, p: bd.seed_segment(_vec(p, "point", d)),
    "ray": lambda d, p: bd.seed_ray(_vec(p, "direction", d)),
    "polygon": _polygon,
    "square": _planar(lambda p: bd.seed_square(_num(p, "half_width", 1.0))),
    "strip": _planar(lambda p: bd.seed_strip()),
    "wedge_strip": _planar(lambda p: bd.seed_wedge_strip(_num(p, "n"))),
}


def parse_grid(spec, dim):
    if not isinstance(spec, dict):
        raise SpecError("grid spec must be an object")
    try:
        g = make_grid(dim, int(spec["count"]), int(spec.get("seed", 0)),
                      bool(spec.get("symmetric", False)))
    except KeyError:
        raise SpecError("grid spec needs 'count'") from None
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad grid spec: {exc}") from None
    extra = spec.get("extra") or []
    return g.with_directions(extra) if len(extra) else g


def grid_to_spec(grid):
    spec = dict(grid.spec)
    if len(grid) > grid.count:
        spec["extra"] = grid.directions[grid.count:].tolist()
    return spec


def parse_body(doc):
    """StarBody or ConvexSeed from a parsed body spec."""
    if not isinstance(doc, dict):
        raise SpecError("body spec must be a JSON object")
    for key in ("dim", "kind", "name"):
        if key not in doc:
            raise SpecError(f"body spec is missing {key!r}")
    try:
        dim = int(doc["dim"])
    except (TypeError, ValueError):
        raise SpecError("'dim' must be an integer") from None
    if dim < 2:
        raise SpecError("'dim' must be at least 2")
    kind, name, params = doc["kind"], doc["name"], doc.get("params") or {}
    if kind == "closed_form":
        table = CLOSED_FORMS
    elif kind == "convex_seed":
        table = SEEDS
    elif kind == "sampled":
        return _parse_sampled(dim, name, params)
    else:
        raise SpecError(f"unknown kind {kind!r}; valid: closed_form, sampled, convex_seed")
    if name not in table:
        raise SpecError(f"unknown {kind} name {name!r}; valid: {sorted(table)}")
    try:
        return table[name](dim, params)
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _parse_sampled(dim, name, params):
    if "grid" not in params or "values" not in params:
        raise SpecError("sampled bodies need 'grid' and 'values'")
    grid = parse_grid(params["grid"], dim)
    try:
        values = [from_json(v) for v in params["values"]]
        return bd.sampled(grid, values, name)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad sampled values: {exc}") from None


def load_body(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from None
    return parse_body(doc)


def sampled_spec(body, grid, name=None):
    """Body spec of ``body`` frozen on ``grid``."""
    values = body.rho(grid.directions)
    return {"dim": grid.dimension, "kind": "sampled", "name": name or body.name,
            "params": {"grid": grid_to_spec(grid), "values": [to_json(v) for v in values]}}


def profile_to_csv(body, grid):
    """CSV text with one row per grid direction: index, theta_1..theta_d, rho."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    d = grid.dimension
    w.writerow(["index"] + [f"theta_{i + 1}" for i in range(d)] + ["rho"])
    for i, (u, v) in enumerate(zip(grid.directions, body.rho(grid.directions))):
        w.writerow([i] + [repr(float(c)) for c in u] + [repr(float(v))])
    return out.getvalue()


def profile_from_csv(text, grid, name="sampled"):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][-1] != "rho":
        raise SpecError("profile CSV needs a header ending in 'rho'")
    body = rows[1:]
    if len(body) != len(grid):
        raise SpecError(f"profile CSV has {len(body)} rows, grid has {len(grid)}")
    dirs = np.array([[float(c) for c in r[1:-1]] for r in body])
    if dirs.shape != grid.directions.shape or not np.array_equal(dirs, grid.directions):
        raise SpecError("profile CSV directions do not match the grid")
    return bd.sampled(grid, [float(r[-1]) for r in body], name)
