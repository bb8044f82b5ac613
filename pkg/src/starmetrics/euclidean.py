"""Euclidean distance, excess, Hausdorff and Attouch-Wets distances computed
from radial representations.

A star body is discretized by direction: on a grid it becomes the union of the
segments [0, rho(phi) phi] (rays when rho = inf).  That union is a subset of the
body, so every distance to it is an upper bound for the true distance, and the
only error source is the angular grid.
"""
from dataclasses import dataclass

import numpy as np

from .extended import INF
from .radial import J_MAX, aw_iterate

CHUNK = 1 << 22


@dataclass(frozen=True)
class HausdorffResult:
    value: float
    witness_forward: tuple
    witness_backward: tuple

    def as_dict(self):
        def w(t):
            return {"direction": [float(c) for c in t[0]], "distance": t[1]}
        return {"value": self.value, "witness_forward": w(self.witness_forward),
                "witness_backward": w(self.witness_backward)}


def _segment_distance(points, dirs, radii):
    """(M, N) distances from points to the segments [0, radii[k] * dirs[k]]."""
    proj = points @ dirs.T
    t = np.clip(proj, 0.0, radii[None, :])
    sq = np.einsum("ij,ij->i", points, points)[:, None] - 2.0 * t * proj + t * t
    return np.sqrt(np.maximum(sq, 0.0))


def _min_segment_distance(points, dirs, radii):
    out = np.empty(len(points))
    step = max(1, CHUNK // max(1, len(dirs)))
    for s in range(0, len(points), step):
        out[s:s + step] = _segment_distance(points[s:s + step], dirs, radii).min(axis=1)
    return out


def point_distance(x, A, grid):
    """d(x, A) with A replaced by its grid segments plus the segment through x.

    Adding [0, rho(theta_x) theta_x] keeps the discretization inside A and makes
    d(x, A) <= d_r(x, A) hold exactly.
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != A.dimension:
        raise ValueError("point and body dimensions differ")
    dirs = grid.directions
    radii = A.rho(dirs)
    out = np.zeros(len(pts))
    norms = np.linalg.norm(pts, axis=1)
    nz = norms > 0
    if np.any(nz):
        p = pts[nz]
        theta = p / norms[nz, None]
        own = A.rho(theta)
        inside = norms[nz] <= own
        res = np.zeros(len(p))
        todo = ~inside
        if np.any(todo):
            q = p[todo]
            grid_part = _min_segment_distance(q, dirs, radii)
            t = np.minimum(norms[nz][todo], own[todo])
            own_part = norms[nz][todo] - t
            res[todo] = np.minimum(grid_part, own_part)
        out[nz] = res
    return float(out[0]) if single else out


def _endpoint_excess(grid, r1, r2):
    """Per-direction distances from rho_1(theta_i) theta_i to the segments of r2.

    Returns an (N,) array.  Uses the grid's nearest-neighbour table and falls
    back to the full scan only for rows where the bound from the remaining
    directions does not settle the minimum.
    """
    dirs = grid.directions
    n = len(dirs)
    out = np.zeros(n)
    unbounded = np.isinf(r1)
    out[unbounded] = np.where(np.isinf(r2[unbounded]), 0.0, INF)
    active = np.nonzero(~unbounded & (r1 > r2))[0]
    if active.size == 0:
        return out
    pts = r1[active, None] * dirs[active]
    idx, angles = grid.neighbours
    nb = idx[active]
    nd = dirs[nb]
    proj = np.einsum("ij,ikj->ik", pts, nd)
    t = np.clip(proj, 0.0, r2[nb])
    sq = (r1[active] ** 2)[:, None] - 2.0 * t * proj + t * t
    best = np.sqrt(np.maximum(sq, 0.0)).min(axis=1)
    if idx.shape[1] < n:
        # every other segment lies at angle >= the last neighbour's angle and
        # is no closer than the ray through it: |p| sin(min(angle, pi/2))
        far = np.minimum(angles[active, -1], np.pi / 2)
        bound = r1[active] * np.sin(far)
        redo = best > bound
        if np.any(redo):
            best[redo] = _min_segment_distance(pts[redo], dirs, r2)
    out[active] = best
    return out


def _witness(grid, per_dir):
    if per_dir.size == 0:
        return (np.zeros(grid.dimension), 0.0)
    i = int(np.argmax(per_dir))
    return (grid.directions[i].copy(), float(per_dir[i]))


def excess(A1, A2, grid):
    """e(A1, A2) = sup_{x in A1} d(x, A2).

    Restricting the sup to radial endpoints is exact for star-shaped A1: if b is
    nearest to x in A2 then t*b lies in A2 and d(t x, A2) <= t d(x, A2).
    """
    if A1.dimension != A2.dimension:
        raise ValueError("dimension mismatch")
    d = _endpoint_excess(grid, A1.rho(grid.directions), A2.rho(grid.directions))
    return float(d.max()) if d.size else 0.0


def hausdorff(A1, A2, grid):
    if A1.dimension != A2.dimension:
        raise ValueError("dimension mismatch")
    r1 = A1.rho(grid.directions)
    r2 = A2.rho(grid.directions)
    return _hausdorff_values(grid, r1, r2)


def _hausdorff_values(grid, r1, r2):
    fwd = _witness(grid, _endpoint_excess(grid, r1, r2))
    bwd = _witness(grid, _endpoint_excess(grid, r2, r1))
    return HausdorffResult(max(fwd[1], bwd[1]), fwd, bwd)


def closedness_flags(*bodies):
    if all(b.hints.get("is_closed_claim") is True for b in bodies):
        return ()
    return ("closedness_unverified",)


def aw_distance(A1, A2, grid, J_max=J_MAX):
    """d_AW = sup_j min(1/j, d_H(A1 & jB, A2 & jB)), same stopping rule as the
    radial version.  Bodies not claimed closed are computed anyway and flagged."""
    if A1.dimension != A2.dimension:
        raise ValueError("dimension mismatch")
    r1 = A1.rho(grid.directions)
    r2 = A2.rho(grid.directions)
    return aw_iterate(
        lambda j: _hausdorff_values(grid, np.minimum(r1, j), np.minimum(r2, j)).value,
        J_max, closedness_flags(A1, A2))
