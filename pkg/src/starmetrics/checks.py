"""Randomized invariant suites over sampled bodies and the corpus.

Each suite returns {invariant name: {"checked": int, "violations": int}} so
that callers can print counts and decide on an exit status.
"""
import numpy as np

from .bodies import sampled, seed_ball, seed_polygon, seed_segment, seed_square, truncate
from .catalog import CORPUS_NAMES, corpus
from .dualities import flower, polar, star_dual
from .euclidean import aw_distance, excess, hausdorff, point_distance
from .grid import grid_slack, make_grid
from .radial import (radial_aw_distance, radial_distance, radial_excess, radial_metric,
                     structured_samples, within_radial_aw)

EXACT = 1e-12
SUITES = ("metric-axioms", "inequalities", "duality", "truncation")


def random_profile(grid, rng, low=0.05, high=2.5):
    """Smooth random radial values: a constant plus a few von Mises bumps,
    sometimes with a rough component."""
    dirs = grid.directions
    vals = np.full(len(dirs), rng.uniform(0.2, 1.0))
    for _ in range(rng.integers(1, 5)):
        u = rng.normal(size=grid.dimension)
        u /= np.linalg.norm(u)
        kappa = rng.uniform(1.0, 20.0)
        vals += rng.uniform(-0.5, 1.0) * np.exp(kappa * (dirs @ u - 1.0))
    if rng.random() < 0.3:
        vals += rng.uniform(0.0, 0.2) * rng.random(len(dirs))
    return np.clip(vals, low, high)


def random_bodies(count, seed, grids):
    """``count`` bounded sampled bodies alternating over ``grids``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        g = grids[i % len(grids)]
        out.append(sampled(g, random_profile(g, rng), f"random[{i}]"))
    return out


def random_tuples(count, size, seed, grids):
    """``count`` tuples of ``size`` sampled bodies, each tuple on one grid."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        g = grids[i % len(grids)]
        out.append(tuple(sampled(g, random_profile(g, rng), f"random[{i}.{k}]")
                         for k in range(size)))
    return out


def default_check_grids(count2=256, count3=512):
    return [make_grid(2, count2), make_grid(3, count3)]


def _tally(results, key, ok):
    entry = results.setdefault(key, {"checked": 0, "violations": 0})
    entry["checked"] += 1
    entry["violations"] += 0 if ok else 1


def metric_axioms(trials, seed, grids=None):
    grids = grids or default_check_grids()
    res = {}
    for a, b, c in random_tuples(trials, 3, seed, grids):
        g = a.profile.grid
        for name, f in (("delta", lambda x, y: radial_metric(x, y, g)),
                        ("d_awr", lambda x, y: radial_aw_distance(x, y, g).value)):
            ab, ba, ac, bc = f(a, b), f(b, a), f(a, c), f(b, c)
            _tally(res, f"{name} symmetry", abs(ab - ba) <= EXACT)
            _tally(res, f"{name} identity", f(a, a) == 0.0)
            _tally(res, f"{name} triangle", ac <= ab + bc + EXACT)
        value = radial_aw_distance(a, b, g).value
        eps_g = grid_slack(g)
        for eps in (0.05, 0.1, 0.25, 1.0 / 3, 0.5, 0.75, 1.0, value if value > 0 else 0.5):
            if abs(value - eps) > eps_g:
                _tally(res, "within_radial_aw agrees", within_radial_aw(a, b, eps, g)
                       == (value < eps))
    return res


def inequalities(trials, seed, grids=None):
    grids = grids or default_check_grids()
    res = {}
    for a, b in random_tuples(trials, 2, seed, grids):
        g = a.profile.grid
        eps_g = grid_slack(g, 2.5)
        _tally(res, "d_H <= delta", hausdorff(a, b, g).value <= radial_metric(a, b, g) + eps_g)
        _tally(res, "d_AW <= d_AW^r",
               aw_distance(a, b, g).value <= radial_aw_distance(a, b, g).value + eps_g)
        _tally(res, "e <= e_r", excess(a, b, g) <= radial_excess(a, b, g) + eps_g)
        pts = structured_samples(a, b, 3.0, g)
        ok = np.all(point_distance(pts, b, g) <= radial_distance(pts, b) + eps_g)
        _tally(res, "d <= d_r", bool(ok))
    return res


def corpus_bodies(d=2, ns=(1, 2, 5, 17, 60)):
    out = []
    for name in CORPUS_NAMES:
        try:
            seq = corpus(name, d)
        except ValueError:
            continue
        for n in ns:
            if n >= seq.start:
                out.append(seq.body(n))
        out.extend(seq.candidate(tag) for tag in seq.candidates)
    return out


def duality(trials, seed, grids=None):
    grids = grids or default_check_grids()
    res = {}
    g = make_grid(2, 2048)
    pool = corpus_bodies(2) + random_bodies(trials, seed, grids)
    for A in pool:
        gg = A.profile.grid if hasattr(A.profile, "grid") else g
        rho = A.rho(gg.directions)
        back = star_dual(star_dual(A)).rho(gg.directions)
        _tally(res, "involution", np.array_equal(rho, back))
        dual = star_dual(A).rho(gg.directions)
        fixed = np.array_equal(dual, rho)
        _tally(res, "fixed point is the ball", (not fixed) or np.all(rho == 1.0))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        gg = grids[int(rng.integers(len(grids)))]
        a = random_profile(gg, rng)
        b = random_profile(gg, rng)
        A1, A2 = sampled(gg, np.minimum(a, b)), sampled(gg, np.maximum(a, b))
        ok = np.all(star_dual(A2).rho(gg.directions) <= star_dual(A1).rho(gg.directions))
        _tally(res, "order reversal", bool(ok))
    seeds = [seed_ball(2, 1.0), seed_ball(2, 2.5), seed_square(), seed_segment([0.6, 0.8]),
             seed_polygon([[1, 0], [0, 2], [-1, 0.5], [-0.5, -1]])]
    for K in seeds:
        h = K.support(g.directions)
        p = polar(K).rho(g.directions)
        mask = np.isfinite(h) & (h > 0)
        _tally(res, "polar times support is 1", bool(np.all(np.abs(p[mask] * h[mask] - 1) <= EXACT)))
        _tally(res, "flower is support", np.array_equal(flower(K).body.rho(g.directions), h))
    return res


def truncation(trials, seed, grids=None):
    grids = grids or default_check_grids()
    res = {}
    rng = np.random.default_rng(seed)
    g = make_grid(2, 512)
    pool = corpus_bodies(2) + random_bodies(trials, seed, grids)
    for A in pool:
        gg = A.profile.grid if hasattr(A.profile, "grid") else g
        eta = float(rng.uniform(0.5, 3.0))
        T = truncate(A, eta)
        u = rng.normal(size=(64, A.dimension))
        u /= np.linalg.norm(u, axis=1)[:, None]
        pts = u * (eta * rng.random(64))[:, None]
        _tally(res, "d_r truncation identity",
               np.array_equal(radial_distance(pts, T), radial_distance(pts, A)))
        if A.hints.get("is_closed_claim"):
            diff = np.abs(point_distance(pts, T, gg) - point_distance(pts, A, gg))
            _tally(res, "d truncation identity", bool(diff.max() <= grid_slack(gg, eta)))
        r = radial_aw_distance(A, sampled(gg, random_profile(gg, rng)), gg)
        dj = [t[1] for t in r.terms]
        _tally(res, "delta_j nondecreasing", all(x <= y for x, y in zip(dj, dj[1:])))
    return res


def run_suite(name, trials, seed, grids=None):
    table = {"metric-axioms": metric_axioms, "inequalities": inequalities,
             "duality": duality, "truncation": truncation}
    if name == "all":
        out = {}
        for key in SUITES:
            out.update({f"{key}: {k}": v for k, v in table[key](trials, seed, grids).items()})
        return out
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; valid: {list(SUITES) + ['all']}")
    return table[name](trials, seed, grids)
