"""Named sequences of star bodies with their candidate limits.

Each ``SequenceSpec`` generates the n-th body of a family and carries a small
table of candidate limit bodies keyed by tag.  ``stated_limit`` is the tag of
the limit usually attributed to the family; the other tags are alternatives
that the convergence analyzer can be asked to test.
"""
from dataclasses import dataclass, field

import numpy as np

from .bodies import (ClosedForm, StarBody, ball, embed_seed, origin, seed_strip,
                     seed_wedge_strip, segment, symmetric_segment)
from .extended import INF
from .grid import basis


@dataclass(frozen=True, eq=False)
class SequenceSpec:
    name: str
    dimension: int
    generator: object = field(repr=False)
    candidates: dict = field(repr=False)
    stated_limit: str
    start: int = 1
    seed_generator: object = field(default=None, repr=False)
    limit_seed: object = field(default=None, repr=False)
    feature_fn: object = field(default=None, repr=False)
    # angular Lipschitz bound used for the grid slack eps_g = L * resolution
    lipschitz: float = 1.0
    closed: bool = True
    notes: tuple = ()

    def body(self, n):
        n = int(n)
        if n < self.start:
            raise ValueError(f"{self.name} is indexed from n = {self.start}")
        return self.generator(n)

    def seed(self, n):
        if self.seed_generator is None:
            raise ValueError(f"{self.name} has no convex seeds")
        return self.seed_generator(int(n))

    def candidate(self, tag):
        try:
            return self.candidates[tag]()
        except KeyError:
            raise KeyError(f"unknown candidate {tag!r} for {self.name}; "
                           f"valid: {sorted(self.candidates)}") from None

    def features(self, n):
        """Directions a grid should contain to resolve the n-th body."""
        extra = list(self.feature_fn(int(n))) if self.feature_fn else []
        return extra + [np.asarray(u) for u in self.body(n).features]


def _require_dim(name, d, allowed):
    if d not in allowed:
        raise ValueError(f"{name} is available in dimensions {sorted(allowed)}, not {d}")


# ------------------------------------------------------------------ moszynska

def moszynska_geometry(n):
    """Height of the small sphere, its radius and the half-angle of the cone.

    The cone has apex e_d/4 and passes through the (d-2)-sphere of the unit
    sphere lying at height 1 - 1/(n+1).
    """
    height = 1.0 - 1.0 / (n + 1.0)
    radius = np.sqrt(1.0 - height * height)
    half_angle = np.arctan2(radius, height - 0.25)
    return height, radius, half_angle


def _moszynska_rho(t, n):
    _, _, alpha = moszynska_geometry(n)
    axial = t[:, -1]
    lateral = np.linalg.norm(t[:, :-1], axis=1)
    phi = np.arctan2(lateral, axial)
    # a ray at angle phi < alpha from the axis enters the cone through its
    # mantle at distance (1/4) sin(alpha) / sin(alpha - phi) and never leaves
    inside = phi < alpha
    with np.errstate(divide="ignore"):
        entry = 0.25 * np.sin(alpha) / np.where(inside, np.sin(alpha - phi), 1.0)
    return np.where(inside, np.minimum(1.0, entry), 1.0)


def moszynska_body(d, n):
    """Closure of B minus the convex cone with apex e_d/4 through the sphere
    of B at height 1 - 1/(n+1)."""
    _require_dim("moszynska_cones", d, {2, 3})
    prof = ClosedForm("moszynska", {"n": n, "dim": d}, lambda t: _moszynska_rho(t, n))
    return StarBody(d, prof, f"moszynska[{n}]", {"is_bounded": True, "is_closed_claim": True,
                                                 "analytic_sup": 1.0, "analytic_inf": 0.25})


# ------------------------------------------------------------------- spikes

def en_spike(d, n):
    """rho(theta) = t exp(-t) with t = n |<theta, e_1>|; maximum 1/e where t = 1."""
    def rho(t):
        s = n * np.abs(t[:, 0])
        return s * np.exp(-s)

    return StarBody(d, ClosedForm("en_spike", {"n": n}, rho), f"en_spike[{n}]",
                    {"is_bounded": True, "is_closed_claim": True,
                     "analytic_sup": 1.0 / np.e, "analytic_inf": 0.0})


def x_power(d, n):
    """rho(theta) = |<theta, e_1>|^n."""
    return StarBody(d, ClosedForm("x_power", {"n": n}, lambda t: np.abs(t[:, 0]) ** n),
                    f"x_power[{n}]", {"is_bounded": True, "is_closed_claim": True,
                                      "analytic_sup": 1.0, "analytic_inf": 0.0})


# ------------------------------------------------------------------ segments

def tilt_direction(d, n):
    """(1/n, sqrt(1 - 1/n^2), 0, ...), tending to e_2."""
    u = np.zeros(d)
    u[0] = 1.0 / n
    u[1] = np.sqrt(1.0 - 1.0 / n ** 2)
    return u


def rotating_direction(d, n):
    """(sqrt(1 - 1/n^2), 1/n, 0, ...), tending to e_1."""
    u = np.zeros(d)
    u[0] = np.sqrt(1.0 - 1.0 / n ** 2)
    u[1] = 1.0 / n
    return u


def rotating_segment(d, n):
    return segment(rotating_direction(d, n), length=1.0)


def tilted_halfspace(d, n):
    """{z : <z, theta_n> <= 0} with theta_n = tilt_direction(d, n)."""
    u = tilt_direction(d, n)
    prof = ClosedForm("tilted_halfspace", {"n": n}, lambda t: np.where(t @ u <= 0.0, INF, 0.0))
    return StarBody(d, prof, f"halfspace[{n}]", {"is_bounded": False, "is_closed_claim": True})


def tilting_limit(d):
    """{<z,e_2> < 0} together with the closed ray {t e_1 : t <= 0}; not closed."""
    def rho(t):
        on_ray = np.linalg.norm(t + basis(d, 0), axis=1) <= 1e-12
        return np.where((t[:, 1] < 0) | on_ray, INF, 0.0)

    return StarBody(d, ClosedForm("tilting_limit", {}, rho), "open_halfplane_with_ray",
                    {"is_bounded": False, "is_closed_claim": False})


def closed_lower_halfspace(d):
    prof = ClosedForm("halfspace", {"normal": basis(d, 1).tolist()},
                      lambda t: np.where(t[:, 1] <= 0.0, INF, 0.0))
    return StarBody(d, prof, "closed_lower_halfspace", {"is_bounded": False,
                                                        "is_closed_claim": True})


# ------------------------------------------------------- truncated parabolas

def _parabola_rho(t, n):
    c, s = t[:, 0], t[:, 1]
    ac = np.abs(c)
    # on a ray with s > 0 the members are t = 0 and t in [n s / c^2, 1/|c|],
    # which is nonempty exactly when n s <= |c|
    with np.errstate(divide="ignore"):
        far = 1.0 / np.where(ac > 0, ac, 1.0)
    wedge = (s > 0) & (ac > 0) & (n * s <= ac)
    return np.where(s == 0, 1.0, np.where(wedge, far, 0.0))


def truncated_parabola(n):
    """Radial function of {-1 <= x <= 1, 0 <= y <= x^2/n}.

    The set itself is not star-shaped about 0; its radial function
    sup{t : t theta in P} describes the radially closed star body made of the
    two triangles with vertices 0, (+-1, 0), (+-1, 1/n).  That star body still
    reaches (+-1, 0) for every n.
    """
    return StarBody(2, ClosedForm("truncated_parabola", {"n": n},
                                  lambda t: _parabola_rho(t, n)),
                    f"truncated_parabola[{n}]",
                    {"is_bounded": True, "is_closed_claim": True,
                     "analytic_sup": float(np.sqrt(1 + 1 / n ** 2)), "analytic_inf": 0.0})


def truncated_parabola_contains(n, points):
    """Membership in the literal set {-1 <= x <= 1, 0 <= y <= x^2/n}."""
    p = np.atleast_2d(points)
    x, y = p[:, 0], p[:, 1]
    return (np.abs(x) <= 1.0) & (y >= 0.0) & (y <= x * x / n)


# ------------------------------------------------------------------- catalog

def _flower_wedge(d):
    _require_dim("flower_wedge", d, {2, 3, 4, 5, 6, 7, 8})
    return SequenceSpec(
        "flower_wedge", d,
        generator=lambda n: embed_seed(seed_wedge_strip(n), d).as_body(),
        candidates={"strip": lambda: embed_seed(seed_strip(), d).as_body()},
        stated_limit="strip",
        seed_generator=lambda n: embed_seed(seed_wedge_strip(n), d),
        limit_seed=lambda: embed_seed(seed_strip(), d))


def _unit_e1_feature(d):
    return lambda n: [basis(d, 0)]


def corpus(name, d=2):
    """SequenceSpec for a named family in dimension d."""
    d = int(d)
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if name == "moszynska_cones":
        _require_dim(name, d, {2, 3})
        return SequenceSpec(name, d, lambda n: moszynska_body(d, n),
                            {"unit-ball": lambda: ball(d, 1.0)}, "unit-ball",
                            feature_fn=lambda n: [basis(d, d - 1)])
    if name == "en_spikes":
        return SequenceSpec(name, d, lambda n: en_spike(d, n),
                            {"origin": lambda: origin(d)}, "origin",
                            feature_fn=lambda n: [tilt_direction(d, n)])
    if name == "xn_powers":
        return SequenceSpec(name, d, lambda n: x_power(d, n),
                            {"segment": lambda: symmetric_segment(basis(d, 0)),
                             "origin": lambda: origin(d)}, "segment",
                            feature_fn=_unit_e1_feature(d))
    if name == "rotating_segments":
        return SequenceSpec(name, d, lambda n: rotating_segment(d, n),
                            {"segment-e1": lambda: segment(basis(d, 0), length=1.0)},
                            "segment-e1", feature_fn=_unit_e1_feature(d))
    if name == "tilting_halfspaces":
        return SequenceSpec(name, d, lambda n: tilted_halfspace(d, n),
                            {"open-halfplane-ray": lambda: tilting_limit(d),
                             "closed-halfspace": lambda: closed_lower_halfspace(d)},
                            "open-halfplane-ray",
                            feature_fn=lambda n: [tilt_direction(d, n), -basis(d, 0)])
    if name == "truncated_parabolas":
        _require_dim(name, d, {2})
        return SequenceSpec(name, d, truncated_parabola,
                            {"origin": lambda: origin(2),
                             "segment": lambda: symmetric_segment(basis(2, 0))},
                            "origin", feature_fn=_unit_e1_feature(2),
                            notes=("the radial function equals 1 at +-e_1 for every n, so "
                                   "the pointwise radial limit is [-e_1, e_1] rather than {0}",))
    if name == "flower_wedge":
        return _flower_wedge(d)
    raise KeyError(f"unknown corpus {name!r}; valid: {CORPUS_NAMES}")


CORPUS_NAMES = ("moszynska_cones", "en_spikes", "xn_powers", "rotating_segments",
                "tilting_halfspaces", "truncated_parabolas", "flower_wedge")
