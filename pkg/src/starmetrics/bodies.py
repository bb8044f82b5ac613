"""Radial profiles, star bodies and convex seeds.

A star body is stored through its radial function
rho_A(theta) = sup{t >= 0 : t*theta in A}, with values in [0, inf].  The set it
denotes is {0} together with every x != 0 with |x| <= rho_A(x/|x|), which is the
radially closed reading: the endpoint rho_A(theta)*theta belongs to A whenever it
is finite.

Profiles are vectorized: they take an (N, d) array of unit vectors and return an
(N,) array.  A single (d,) direction returns a float.
"""
from dataclasses import dataclass, field

import numpy as np

from .extended import INF, reciprocal

# two unit vectors closer than this are treated as the same direction by the
# profiles that live on finitely many rays (segments, rays)
SPIKE_TOL = 1e-9


def _as_dirs(dirs):
    dirs = np.asarray(dirs, dtype=float)
    return (dirs[None, :], True) if dirs.ndim == 1 else (dirs, False)


class RadialProfile:
    """Base class.  Subclasses implement ``_evaluate`` on an (N, d) array."""

    kind = "abstract"
    features = ()

    def __call__(self, dirs):
        arr, single = _as_dirs(dirs)
        out = np.asarray(self._evaluate(arr), dtype=float)
        return float(out[0]) if single else out

    def _evaluate(self, dirs):
        raise NotImplementedError


class ClosedForm(RadialProfile):
    kind = "closed_form"

    def __init__(self, name, params, fn, features=()):
        self.name = name
        self.params = dict(params)
        self._fn = fn
        self.features = tuple(np.asarray(u, dtype=float) for u in features)

    def _evaluate(self, dirs):
        return self._fn(dirs)

    def __repr__(self):
        return f"ClosedForm({self.name!r}, {self.params!r})"


class Sampled(RadialProfile):
    """Values on a grid; off-grid directions take the value of the nearest grid
    direction, ties resolved towards the lowest index."""

    kind = "sampled"

    def __init__(self, grid, values):
        values = np.array(values, dtype=float)
        if values.shape != (len(grid),):
            raise ValueError(f"expected {len(grid)} values, got shape {values.shape}")
        if np.any(np.isnan(values)) or np.any(values < 0):
            raise ValueError("radial values must lie in [0, inf]")
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    def nearest(self, dirs):
        k = min(4, len(self.grid))
        dist, idx = self.grid.tree.query(dirs, k=k)
        dist = np.atleast_2d(dist)
        idx = np.atleast_2d(idx)
        tied = dist <= dist[:, :1] + 1e-15
        return np.where(tied, idx, np.iinfo(np.int64).max).min(axis=1)

    def _evaluate(self, dirs):
        if dirs is self.grid.directions or (
                dirs.shape == self.grid.directions.shape
                and np.array_equal(dirs, self.grid.directions)):
            return self.values.copy()
        return self.values[self.nearest(dirs)]

    def __repr__(self):
        return f"Sampled(count={len(self.values)})"


class Derived(RadialProfile):
    """Lazy pointwise combination of operand profiles."""

    kind = "derived"
    OPERATORS = ("min_const", "reciprocal", "sum", "scale", "max")

    def __init__(self, operator, operands, const=None):
        if operator not in self.OPERATORS:
            raise ValueError(f"unknown operator {operator!r}")
        self.operator = operator
        self.operands = tuple(operands)
        self.const = const
        feats = []
        for op in self.operands:
            feats.extend(op.features)
        self.features = tuple(feats)

    def _evaluate(self, dirs):
        vals = [op._evaluate(dirs) for op in self.operands]
        if self.operator == "min_const":
            return np.minimum(vals[0], self.const)
        if self.operator == "reciprocal":
            return reciprocal(vals[0])
        if self.operator == "scale":
            return self.const * vals[0]
        if self.operator == "sum":
            return np.sum(vals, axis=0)
        return np.max(vals, axis=0)

    def __repr__(self):
        return f"Derived({self.operator!r}, const={self.const!r})"


@dataclass(frozen=True, eq=False)
class StarBody:
    dimension: int
    profile: RadialProfile
    name: str = "body"
    hints: dict = field(default_factory=dict)
    # set by the star duality so that applying it twice returns this body
    dual_source: "StarBody" = field(default=None, repr=False)

    def rho(self, dirs):
        return self.profile(dirs)

    @property
    def features(self):
        """Directions of isolated spikes (segments, rays) that a grid must contain
        for the body to be seen at all."""
        return self.profile.features

    def contains(self, points):
        pts, single = _as_dirs(points)
        norms = np.linalg.norm(pts, axis=1)
        out = np.ones(len(pts), dtype=bool)
        nz = norms > 0
        if np.any(nz):
            out[nz] = norms[nz] <= self.profile(pts[nz] / norms[nz, None])
        return bool(out[0]) if single else out


def membership(A, x):
    """x in A, i.e. x = 0 or |x| <= rho_A(x/|x|)."""
    return A.contains(x)


def eval_radial(A, theta):
    return A.rho(theta)


# ---------------------------------------------------------------- closed forms

def _spike_values(dirs, spikes):
    out = np.zeros(len(dirs))
    for u, length in spikes:
        hit = np.linalg.norm(dirs - u, axis=1) <= SPIKE_TOL
        out = np.where(hit, np.maximum(out, length), out)
    return out


def spikes(directions, lengths, name="spikes"):
    """Union of segments [0, l*u] (l may be inf, giving a ray)."""
    dirs = [np.asarray(u, float) / np.linalg.norm(u) for u in directions]
    lengths = [float(l) for l in lengths]
    pairs = list(zip(dirs, lengths))
    d = len(dirs[0])
    prof = ClosedForm(name, {"directions": [u.tolist() for u in dirs], "lengths": lengths},
                      lambda t: _spike_values(t, pairs), features=dirs)
    bounded = all(np.isfinite(lengths))
    return StarBody(d, prof, name, {"is_bounded": bounded, "is_closed_claim": True,
                                    "analytic_sup": max(lengths), "analytic_inf": 0.0})


def segment(x, length=None):
    """[0, x]; pass a direction and ``length`` to avoid rounding |x|."""
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x)
    if n == 0:
        raise ValueError("segment endpoint must be nonzero")
    return spikes([x / n], [n if length is None else length], name="segment")


def symmetric_segment(u, length=1.0):
    """[-l*u, l*u]."""
    u = np.asarray(u, dtype=float)
    return spikes([u, -u], [length, length], name="symmetric_segment")


def ray(u):
    return spikes([u], [INF], name="ray")


def ball(d, r=1.0):
    r = float(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    prof = ClosedForm("ball", {"radius": r}, lambda t: np.full(len(t), r))
    return StarBody(d, prof, "ball", {"is_bounded": True, "is_closed_claim": True,
                                      "analytic_sup": r, "analytic_inf": r})


def origin(d):
    body = ball(d, 0.0)
    return StarBody(d, ClosedForm("origin", {}, lambda t: np.zeros(len(t))), "origin",
                    body.hints)


def whole_space(d):
    prof = ClosedForm("whole_space", {}, lambda t: np.full(len(t), INF))
    return StarBody(d, prof, "whole_space", {"is_bounded": False, "is_closed_claim": True,
                                             "analytic_sup": INF, "analytic_inf": INF})


def halfspace(u):
    """Closed half-space {z : <z,u> <= 0}."""
    u = np.asarray(u, dtype=float) / np.linalg.norm(u)
    prof = ClosedForm("halfspace", {"normal": u.tolist()},
                      lambda t: np.where(t @ u <= 0.0, INF, 0.0))
    return StarBody(len(u), prof, "halfspace", {"is_bounded": False, "is_closed_claim": True})


def open_halfspace(u):
    """{z : <z,u> > 0} together with the origin (the flower of the ray R_u)."""
    u = np.asarray(u, dtype=float) / np.linalg.norm(u)
    prof = ClosedForm("open_halfspace", {"normal": u.tolist()},
                      lambda t: np.where(t @ u > 0.0, INF, 0.0))
    return StarBody(len(u), prof, "open_halfspace", {"is_bounded": False,
                                                     "is_closed_claim": False})


def sampled(grid, values, name="sampled"):
    prof = Sampled(grid, values)
    vals = prof.values
    return StarBody(grid.dimension, prof, name,
                    {"is_bounded": bool(np.all(np.isfinite(vals))), "is_closed_claim": None,
                     "analytic_sup": float(vals.max()), "analytic_inf": float(vals.min())})


def sample_on(A, grid, name=None):
    """Freeze A's radial function on a grid."""
    return sampled(grid, A.rho(grid.directions), name or f"sampled({A.name})")


# ------------------------------------------------------------------ operations

def _check_same_dim(*bodies):
    dims = {b.dimension for b in bodies}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")


def radial_sum(A, B):
    _check_same_dim(A, B)
    hints = {"is_bounded": bool(A.hints.get("is_bounded") and B.hints.get("is_bounded"))}
    return StarBody(A.dimension, Derived("sum", [A.profile, B.profile]),
                    f"({A.name} +r {B.name})", hints)


def scale(A, lam):
    lam = float(lam)
    if not lam > 0:
        raise ValueError("scale factor must be positive")
    hints = {k: A.hints.get(k) for k in ("is_bounded", "is_closed_claim")}
    return StarBody(A.dimension, Derived("scale", [A.profile], lam), f"{lam:g}*{A.name}", hints)


def truncate(A, eta):
    """A intersected with eta*B, i.e. min(rho_A, eta)."""
    eta = float(eta)
    if not (eta > 0 and np.isfinite(eta)):
        raise ValueError("truncation radius must be positive and finite")
    hints = {"is_bounded": True, "is_closed_claim": A.hints.get("is_closed_claim")}
    return StarBody(A.dimension, Derived("min_const", [A.profile], eta),
                    f"{A.name}&{eta:g}B", hints)


def radial_union(bodies, name="union"):
    """Pointwise max of radial functions (union of the sets)."""
    _check_same_dim(*bodies)
    return StarBody(bodies[0].dimension, Derived("max", [b.profile for b in bodies]), name)


# ---------------------------------------------------------------- convex seeds

@dataclass(frozen=True, eq=False)
class ConvexSeed:
    """Closed convex set containing 0, known through its radial profile and its
    support function.  ``support_fn`` accepts arbitrary (not only unit) vectors
    and is positively homogeneous."""

    dimension: int
    radial: RadialProfile
    support_fn: object = field(repr=False)
    name: str = "seed"
    params: dict = field(default_factory=dict)
    bounded: bool = True

    def support(self, dirs):
        arr, single = _as_dirs(dirs)
        out = np.asarray(self.support_fn(arr), dtype=float)
        return float(out[0]) if single else out

    def as_body(self):
        return StarBody(self.dimension, self.radial, self.name,
                        {"is_bounded": self.bounded, "is_closed_claim": True})


def _ray_support(t, u):
    return np.where(t @ u > 0.0, INF, 0.0)


def seed_ball(d, r=1.0):
    r = float(r)
    body = ball(d, r)
    return ConvexSeed(d, body.profile, lambda t: r * np.linalg.norm(t, axis=1), "ball",
                      {"radius": r})


def seed_segment(x, length=None):
    x = np.asarray(x, dtype=float)
    body = segment(x, length)
    n = np.linalg.norm(x)
    end = x / n * (n if length is None else length)
    return ConvexSeed(len(x), body.profile, lambda t: np.maximum(0.0, t @ end), "segment",
                      {"point": end.tolist()})


def seed_ray(u):
    u = np.asarray(u, dtype=float) / np.linalg.norm(u)
    return ConvexSeed(len(u), ray(u).profile, lambda t: _ray_support(t, u), "ray",
                      {"direction": u.tolist()}, bounded=False)


def _polygon_halfplanes(vertices):
    v = np.asarray(vertices, dtype=float)
    area2 = np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
    if area2 < 0:
        v = v[::-1]
    edges = np.roll(v, -1, axis=0) - v
    normals = np.column_stack([edges[:, 1], -edges[:, 0]])
    offsets = np.einsum("ij,ij->i", normals, v)
    if np.any(offsets < -1e-12 * np.linalg.norm(normals, axis=1)):
        raise ValueError("polygon must be convex and contain the origin")
    return normals, np.maximum(offsets, 0.0)


def _polygon_radial(t, normals, offsets):
    # rho(theta) = min over edges with <n_i,theta> > 0 of b_i / <n_i,theta>
    dots = t @ normals.T
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(dots > 0, offsets[None, :] / np.where(dots > 0, dots, 1.0), INF)
    return ratios.min(axis=1)


def seed_polygon(vertices, name="polygon"):
    """Convex polygon containing 0, from its vertex list (any orientation)."""
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
        raise ValueError("polygon needs at least three 2D vertices")
    normals, offsets = _polygon_halfplanes(v)
    prof = ClosedForm(name, {"vertices": v.tolist()},
                      lambda t: _polygon_radial(t, normals, offsets))
    return ConvexSeed(2, prof, lambda t: np.maximum(0.0, (t @ v.T).max(axis=1)), name,
                      {"vertices": v.tolist()})


def seed_square(half_width=1.0):
    h = float(half_width)
    return seed_polygon([[h, h], [-h, h], [-h, -h], [h, -h]], name="square")


def _strip_radial(t):
    c, s = t[:, 0], t[:, 1]
    with np.errstate(divide="ignore"):
        inside = np.where(c > 0, 1.0 / np.where(c > 0, c, 1.0), 0.0)
    out = np.where(s >= 0, inside, 0.0)
    return np.where((c == 0) & (s > 0), INF, out)


def _strip_support(t):
    return np.where(t[:, 1] > 0, INF, np.maximum(0.0, t[:, 0]))


def seed_strip():
    """[0,1] x [0, inf) in the plane."""
    prof = ClosedForm("strip", {}, _strip_radial)
    return ConvexSeed(2, prof, _strip_support, "strip", {}, bounded=False)


def _wedge_radial(t, n):
    c, s = t[:, 0], t[:, 1]
    slope = n * c - s
    with np.errstate(divide="ignore"):
        finite = n / np.where(slope > 0, slope, 1.0)
    val = np.where(slope > 0, finite, INF)
    return np.where((c >= 0) & (s >= 0), val, 0.0)


def _wedge_support(t, n):
    c, s = t[:, 0], t[:, 1]
    return np.where((s > 0) | (c + n * s > 0), INF, np.maximum(0.0, c))


def seed_wedge_strip(n):
    """{x >= 0, y >= 0, y >= n(x - 1)}: the strip [0,1] x [0, inf) with the
    wedge above the line through (1,0) of slope n added."""
    n = float(n)
    prof = ClosedForm("wedge_strip", {"n": n}, lambda t: _wedge_radial(t, n))
    return ConvexSeed(2, prof, lambda t: _wedge_support(t, n), "wedge_strip", {"n": n},
                      bounded=False)


def seed_vrep(points, rays=(), radial=None, name="vrep"):
    """conv(points) + cone(rays).  The support function is exact; a radial
    profile must be supplied (it is only known in closed form for named shapes)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    rs = np.asarray(rays, dtype=float).reshape(-1, pts.shape[1])

    def support(t):
        h = np.maximum(0.0, (t @ pts.T).max(axis=1))
        if len(rs):
            h = np.where((t @ rs.T > 0).any(axis=1), INF, h)
        return h

    if radial is None:
        raise ValueError("seed_vrep needs the radial profile of the shape")
    return ConvexSeed(pts.shape[1], radial, support, name,
                      {"points": pts.tolist(), "rays": rs.tolist()}, bounded=not len(rs))


def embed_seed(seed, d):
    """The planar seed placed in the span of e_1, e_2 inside R^d."""
    if seed.dimension != 2 or d < 2:
        raise ValueError("only planar seeds can be embedded")
    if d == 2:
        return seed

    def radial(t):
        inplane = np.linalg.norm(t[:, 2:], axis=1) <= SPIKE_TOL
        out = np.zeros(len(t))
        if np.any(inplane):
            p = t[inplane, :2]
            out[inplane] = seed.radial(p / np.linalg.norm(p, axis=1)[:, None])
        return out

    def support(t):
        return np.asarray(seed.support_fn(t[:, :2]), dtype=float)

    prof = ClosedForm(f"embedded_{seed.name}", dict(seed.params, dim=d), radial)
    return ConvexSeed(d, prof, support, seed.name, dict(seed.params), seed.bounded)
