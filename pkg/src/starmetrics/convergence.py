"""Run a sequence of star bodies through five convergence notions.

Notions: pointwise radial convergence (on a fixed probe set of directions),
the radial metric delta, the radial Attouch-Wets distance, the Hausdorff
distance and the Attouch-Wets distance.  Each notion yields a trace over n and
a verdict read off the last quartile of that trace.
"""
from dataclasses import dataclass, field

import numpy as np

from .bodies import StarBody
from .dualities import flower
from .euclidean import aw_distance, hausdorff
from .extended import INF, abs_gap, to_json
from .grid import grid_slack, make_grid
from .radial import J_MAX, radial_aw_distance, radial_metric

NOTIONS = ("pointwise_radial", "delta", "radial_aw", "hausdorff", "aw")
# a tail whose log-log slope is at most this is read as decaying to 0
DECAY_SLOPE = -0.25
# relative drop across the tail still compatible with a floor
FLAT_DROP = 0.02


@dataclass
class NotionEntry:
    trace: list
    verdict: str
    reason: str
    threshold: dict
    floor: float = None
    slope: float = None

    def as_dict(self):
        return {"trace": [[n, to_json(v) if v == v else None] for n, v in self.trace],
                "verdict": self.verdict, "reason": self.reason,
                "threshold": self.threshold,
                "floor": None if self.floor is None else to_json(self.floor),
                "slope": self.slope}


@dataclass
class ConvergenceReport:
    sequence: str
    candidate: str
    candidate_name: str
    dimension: int
    n_max: int
    grid: dict
    eps_g: float
    notions: dict
    probes: int
    extras: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def verdict(self, notion):
        return self.notions[notion].verdict

    def as_dict(self):
        return {"sequence": self.sequence, "candidate": self.candidate,
                "candidate_name": self.candidate_name, "dimension": self.dimension,
                "n_max": self.n_max, "grid": self.grid, "eps_g": self.eps_g,
                "probes": self.probes,
                "notions": {k: v.as_dict() for k, v in self.notions.items()},
                "extras": self.extras, "notes": list(self.notes)}

    def csv_rows(self):
        for notion, entry in self.notions.items():
            for n, v in entry.trace:
                yield n, notion, v


def default_grid(d, n_max=60):
    if d == 2:
        return make_grid(2, max(1024, 16 * n_max))
    return make_grid(d, 4096)


def default_probes(d):
    return make_grid(d, 16 if d == 2 else 64)


def default_thresholds(eps_g):
    return {"converge_below": 10.0 * eps_g, "diverge_above": 20.0 * eps_g,
            "decay_slope": DECAY_SLOPE}


def pointwise_gap(rho_n, rho_lim, n):
    """Per-direction gap: absolute gap for finite targets; for infinite targets
    the shortfall 1 - rho_n / M_n below the growth bar M_n = sqrt(n)."""
    bar = np.sqrt(n)
    finite = np.isfinite(rho_lim)
    gap = np.where(finite, abs_gap(rho_n, np.where(finite, rho_lim, 0.0)), 0.0)
    short = np.clip(1.0 - np.minimum(rho_n, bar) / bar, 0.0, 1.0)
    return np.where(finite, gap, short)


def tail_slope(ns, vals):
    if len(vals) < 2 or not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        return None
    x = np.log(np.asarray(ns, dtype=float))
    if np.ptp(x) == 0:
        return None
    return float(np.polyfit(x, np.log(vals), 1)[0])


def judge(trace, thresholds):
    """Verdict from the last quartile of a trace of (n, value) pairs.

    converges: tail max below ``converge_below``, or a tail that keeps decaying
    like a power of n with log-log slope <= ``decay_slope`` (fitted on the
    last half of the trace).
    diverges: tail min above ``diverge_above`` and a flat tail (the last value
    within FLAT_DROP of the tail max).
    """
    ns = np.array([n for n, _ in trace], dtype=float)
    vals = np.array([v for _, v in trace], dtype=float)
    if vals.size == 0 or np.any(np.isnan(vals)):
        return "inconclusive", "not applicable", None, None
    cut = ns[0] + 0.75 * (ns[-1] - ns[0])
    tail = ns >= cut
    if tail.sum() < 3:
        tail = np.zeros_like(tail)
        tail[-3:] = True
    tn, tv = ns[tail], vals[tail]
    tmax, tmin = float(tv.max()), float(tv.min())
    # the slope is fitted on the last half: traces built from integer j
    # levels move in steps, and a quartile can sit on a single step
    half = ns >= ns[0] + 0.5 * (ns[-1] - ns[0])
    slope = tail_slope(ns[half], vals[half])
    if tmax < thresholds["converge_below"]:
        return "converges", "tail below threshold", tmin, slope
    decaying = slope is not None and slope <= thresholds["decay_slope"] and tv[-1] <= tv[0]
    if decaying:
        return "converges", f"tail decays like n^{slope:.2f}", tmin, slope
    if tmin > thresholds["diverge_above"]:
        if tv[-1] >= (1.0 - FLAT_DROP) * tmax:
            return "diverges", "persistent floor", tmin, slope
        return "inconclusive", "above threshold but still decreasing", tmin, slope
    return "inconclusive", "between thresholds", tmin, slope


def _bounded(values):
    return bool(np.all(np.isfinite(values)))


def analyze(seq, candidate, n_max=60, grid=None, thresholds=None, probes=None,
            candidate_tag=None, J_max=J_MAX):
    """ConvergenceReport for n = start..n_max against one candidate limit.

    ``candidate`` is a StarBody or a tag of ``seq.candidates``.  Each n uses
    the base grid plus the directions the n-th body needs to be resolved.
    """
    if n_max < 10:
        raise ValueError("n_max must be at least 10")
    if isinstance(candidate, str):
        candidate_tag = candidate
        candidate = seq.candidate(candidate)
    if candidate.dimension != seq.dimension:
        raise ValueError("candidate and sequence dimensions differ")
    grid = grid if grid is not None else default_grid(seq.dimension, n_max)
    probes = probes if probes is not None else default_probes(seq.dimension)
    eps_g = grid_slack(grid, seq.lipschitz)
    thresholds = thresholds or default_thresholds(eps_g)
    cand_feats = [np.asarray(u) for u in candidate.features]
    lim_probe = candidate.rho(probes.directions)
    traces = {k: [] for k in NOTIONS}
    reasons = {}
    flags = set()
    for n in range(seq.start, n_max + 1):
        body = seq.body(n)
        g = grid.with_directions(seq.features(n) + cand_feats)
        traces["pointwise_radial"].append(
            (n, float(pointwise_gap(body.rho(probes.directions), lim_probe, n).max())))
        rb, rc = body.rho(g.directions), candidate.rho(g.directions)
        bounded = _bounded(rb) and _bounded(rc)
        if bounded:
            traces["delta"].append((n, radial_metric(body, candidate, g)))
            traces["hausdorff"].append((n, hausdorff(body, candidate, g).value))
        else:
            traces["delta"].append((n, float("nan")))
            traces["hausdorff"].append((n, float("nan")))
            reasons["delta"] = reasons["hausdorff"] = "unbounded body: only truncations compared"
        traces["radial_aw"].append((n, radial_aw_distance(body, candidate, g, J_max).value))
        res = aw_distance(body, candidate, g, J_max)
        flags.update(res.flags)
        traces["aw"].append((n, res.value))
    notions = {}
    for k in NOTIONS:
        verdict, reason, floor, slope = judge(traces[k], thresholds)
        if reason == "not applicable":
            reason = reasons.get(k, reason)
        notions[k] = NotionEntry(traces[k], verdict, reason, dict(thresholds), floor, slope)
    report = ConvergenceReport(seq.name, candidate_tag or candidate.name, candidate.name,
                               seq.dimension, n_max, dict(grid.spec, resolution=grid.resolution),
                               eps_g, notions, len(probes), notes=list(seq.notes))
    if flags:
        report.notes.extend(sorted(flags))
    if seq.seed_generator is not None and seq.limit_seed is not None:
        report.extras["flower"] = flower_trace(seq, n_max, grid, thresholds, J_max)
        aw_ok = notions["aw"].verdict == "converges"
        fl_bad = report.extras["flower"]["radial_aw_verdict"] != "converges"
        report.extras["flower"]["topology_gap"] = bool(aw_ok and fl_bad)
        if aw_ok and fl_bad:
            report.notes.append("seeds converge in d_AW while their flowers do not converge "
                                "in d_AW^r: the flower map is not continuous here")
    return report


def flower_trace(seq, n_max, grid, thresholds, J_max=J_MAX):
    """rho of the flowers at e_1 and d_AW^r between flowers, per n."""
    e1 = np.zeros(seq.dimension)
    e1[0] = 1.0
    limit = flower(seq.limit_seed()).body
    rho_e1, dist = [], []
    for n in range(seq.start, n_max + 1):
        fb = flower(seq.seed(n)).body
        rho_e1.append((n, fb.rho(e1)))
        dist.append((n, radial_aw_distance(fb, limit, grid, J_max).value))
    verdict, reason, floor, _ = judge(dist, thresholds)
    return {"rho_e1": [[n, to_json(v)] for n, v in rho_e1],
            "limit_rho_e1": to_json(limit.rho(e1)),
            "radial_aw": [[n, v] for n, v in dist],
            "radial_aw_verdict": verdict, "radial_aw_floor": floor}


def separation_suite(grid=None, n_max=60, d=2, names=None):
    """Reports for every corpus sequence against every candidate it carries.

    When the stated candidate fails pointwise while an alternative passes, the
    stated candidate's report is flagged.
    """
    from .catalog import CORPUS_NAMES, corpus

    reports = []
    for name in names or CORPUS_NAMES:
        try:
            seq = corpus(name, d)
        except ValueError:
            continue
        batch = [analyze(seq, tag, n_max, grid) for tag in seq.candidates]
        stated = [r for r in batch if r.candidate == seq.stated_limit]
        winners = [r.candidate for r in batch if r.verdict("pointwise_radial") == "converges"]
        for r in stated:
            if r.verdict("pointwise_radial") != "converges" and winners:
                r.notes.append(f"stated limit {seq.stated_limit!r} is not the pointwise radial "
                               f"limit; converging candidates: {winners}")
                r.extras["stated_limit_disagrees"] = True
        reports.extend(batch)
    return reports


def implication_violations(report, closed=True):
    """Implications that must hold between verdicts of one report."""
    v = {k: e.verdict for k, e in report.notions.items()}
    bad = []
    if v["radial_aw"] == "converges" and v["pointwise_radial"] != "converges":
        bad.append("radial_aw converges but pointwise does not")
    if v["delta"] == "converges" and v["radial_aw"] != "converges":
        bad.append("delta converges but radial_aw does not")
    if closed and v["radial_aw"] == "converges" and v["aw"] != "converges":
        bad.append("radial_aw converges but aw does not")
    return bad


def convexity_spot_check(A, grid, pairs=500, shrink=1e-6, seed=0, radius=10.0):
    """Sample pairs of points of A (truncated at ``radius``) and test that their
    midpoints, shrunk by (1 - shrink), belong to A.  Returns the failure count."""
    rng = np.random.default_rng(seed)
    rho = np.minimum(A.rho(grid.directions), radius)
    i = rng.integers(0, len(grid), size=(pairs, 2))
    t = rng.random((pairs, 2))
    a = (t[:, :1] * rho[i[:, 0], None]) * grid.directions[i[:, 0]]
    b = (t[:, 1:] * rho[i[:, 1], None]) * grid.directions[i[:, 1]]
    mids = (1.0 - shrink) * 0.5 * (a + b)
    return int((~A.contains(mids)).sum())
