"""Radial distance functional and the metrics built on it.

d_r(x, A) is 0 inside A and |x| - rho_A(x/|x|) outside.  The radial metric is
the sup-norm distance of radial functions, and the radial Attouch-Wets
distance telescopes that metric over the truncations A & jB:

    d_AW^r(A1, A2) = sup_j min(1/j, delta(A1 & jB, A2 & jB)).
"""
from dataclasses import dataclass, field

import numpy as np

from .bodies import truncate
from .extended import INF, abs_gap, positive_gap, sup

J_MAX = 64
# relative overshoot used for the samples just outside a radial endpoint
OVERSHOOT = 1e-9


@dataclass(frozen=True)
class AWRResult:
    """Outcome of the j-iteration behind both Attouch-Wets distances.

    ``terms`` holds (j, distance between the j-truncations, min(1/j, distance)).
    ``truncated_at`` is J_max when the iteration hit the cap, else None.
    """

    value: float
    attained_j: int
    terms: tuple
    truncated_at: int = None
    stop_cause: str = "bound"
    flags: tuple = ()

    def as_dict(self):
        return {"value": self.value, "attained_j": self.attained_j,
                "terms": [list(t) for t in self.terms], "truncated_at": self.truncated_at,
                "stop_cause": self.stop_cause, "flags": list(self.flags)}


def _check(A1, A2):
    if A1.dimension != A2.dimension:
        raise ValueError(f"dimension mismatch: {A1.dimension} vs {A2.dimension}")


def radial_distance(x, A):
    """d_r(x, A); always finite.  Accepts one point or an (M, d) array."""
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    norms = np.linalg.norm(pts, axis=1)
    out = np.zeros(len(pts))
    nz = norms > 0
    if np.any(nz):
        rho = A.rho(pts[nz] / norms[nz, None])
        out[nz] = np.where(norms[nz] <= rho, 0.0, norms[nz] - np.where(np.isinf(rho), 0.0, rho))
    return float(out[0]) if single else out


def radial_excess(A1, A2, grid):
    """e_r(A1, A2) = sup over the grid of (rho_1 - rho_2)_+."""
    _check(A1, A2)
    return sup(positive_gap(A1.rho(grid.directions), A2.rho(grid.directions)))


def radial_metric(A1, A2, grid):
    """delta(A1, A2) = sup over the grid of |rho_1 - rho_2|, with |inf - inf| = 0."""
    _check(A1, A2)
    return sup(abs_gap(A1.rho(grid.directions), A2.rho(grid.directions)))


def aw_iterate(term_distance, J_max=J_MAX, flags=()):
    """Shared j-loop: best = max_j min(1/j, D_j), stopping once 1/(j+1) <= best."""
    if J_max < 1:
        raise ValueError("J_max must be at least 1")
    best, best_j, terms = 0.0, 1, []
    stop = "cap"
    for j in range(1, J_max + 1):
        dj = float(term_distance(j))
        term = min(1.0 / j, dj)
        terms.append((j, dj, term))
        if term > best:
            best, best_j = term, j
        # every later term is at most 1/(j+1)
        if 1.0 / (j + 1) <= best:
            stop = "bound"
            break
    return AWRResult(best, best_j, tuple(terms), J_max if stop == "cap" else None, stop,
                     tuple(flags))


def radial_aw_distance(A1, A2, grid, J_max=J_MAX):
    _check(A1, A2)
    r1 = A1.rho(grid.directions)
    r2 = A2.rho(grid.directions)
    # delta(A1 & jB, A2 & jB) computed on the same grid values; equal to
    # radial_metric(truncate(A1, j), truncate(A2, j), grid)
    return aw_iterate(lambda j: sup(np.abs(np.minimum(r1, j) - np.minimum(r2, j))), J_max)


def epsilon_index(eps):
    """The integer j with eps in (1/(j+1), 1/j]."""
    eps = float(eps)
    if not (0.0 < eps <= 1.0):
        raise ValueError("epsilon must lie in (0, 1]")
    j = max(1, int(np.floor(1.0 / eps)))
    while eps > 1.0 / j:
        j -= 1
    while eps <= 1.0 / (j + 1):
        j += 1
    return j


def within_radial_aw(A1, A2, eps, grid):
    """d_AW^r(A1, A2) < eps, decided from the single truncation level j(eps)."""
    _check(A1, A2)
    j = epsilon_index(eps)
    return radial_metric(truncate(A1, j), truncate(A2, j), grid) < eps


def structured_samples(A1, A2, radius, grid):
    """Points t*theta with t in {lam * rho_1, lam * rho_2, lam * radius} for
    lam in {0, 1/2, 1, 1 + OVERSHOOT}, kept when t <= radius."""
    dirs = grid.directions
    lams = np.array([0.0, 0.5, 1.0, 1.0 + OVERSHOOT])
    scales = np.stack([A1.rho(dirs), A2.rho(dirs), np.full(len(dirs), float(radius))])
    ts = (scales[:, :, None] * lams[None, None, :]).transpose(1, 0, 2).reshape(len(dirs), -1)
    ts = np.where(np.isfinite(ts) & (ts <= radius), ts, np.nan)
    keep = ~np.isnan(ts)
    rows = np.nonzero(keep)
    return ts[rows][:, None] * dirs[rows[0]]


def radial_distance_sup_gap(A1, A2, radius, grid):
    """sup of |d_r(x, A1) - d_r(x, A2)| over the structured samples in radius*B."""
    _check(A1, A2)
    if not radius > 0:
        raise ValueError("radius must be positive")
    pts = structured_samples(A1, A2, radius, grid)
    return sup(np.abs(radial_distance(pts, A1) - radial_distance(pts, A2)))


def radial_continuity_diagnostic(A, grid, radius=1.0):
    """Largest jump of rho_A & radius*B and of d_r(radius*theta, A) between
    neighbouring grid directions.  Both stay near 0 for continuous radial
    functions and stay large at a discontinuity however fine the grid."""
    rho = np.minimum(A.rho(grid.directions), radius)
    idx, _ = grid.neighbours
    jump = np.abs(rho[idx[:, 1:2]] - rho[:, None]).max() if idx.shape[1] > 1 else 0.0
    dr = radial_distance(radius * grid.directions, A)
    dr_jump = np.abs(dr[idx[:, 1:2]] - dr[:, None]).max() if idx.shape[1] > 1 else 0.0
    return {"rho_jump": float(jump), "dr_jump": float(dr_jump),
            "resolution": grid.resolution}
