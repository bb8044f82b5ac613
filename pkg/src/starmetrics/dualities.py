"""Star duality, flowers, polars and the checks around them.

The star duality Phi sends rho to 1/rho (1/0 = inf, 1/inf = 0).  The flower of
a convex seed K containing 0 is the star body whose radial function is the
support function h_K, and the polar body is K° = Phi(flower(K)).
"""
from dataclasses import dataclass

import numpy as np

from .bodies import ClosedForm, ConvexSeed, Derived, StarBody
from .euclidean import aw_distance
from .extended import INF, reciprocal
from .grid import make_grid
from .radial import J_MAX, radial_aw_distance, radial_metric


def star_dual(A):
    """Phi(A).  Applying it to a dual returns the original body object, so
    Phi(Phi(A)) evaluates bit-for-bit like A."""
    if A.dual_source is not None:
        return A.dual_source
    hints = {"is_closed_claim": None}
    return StarBody(A.dimension, Derived("reciprocal", [A.profile]), f"phi({A.name})", hints,
                    dual_source=A)


def fixed_point_residual(A, grid):
    """Grid directions where Phi(A) and A differ, and the pointwise solution of
    1/rho = rho there (which forces rho = 1)."""
    rho = A.rho(grid.directions)
    dual = star_dual(A).rho(grid.directions)
    mismatch = np.nonzero(dual != rho)[0]
    return {"mismatch": mismatch.tolist(), "fixed": bool(mismatch.size == 0),
            "all_one": bool(np.all(rho == 1.0))}


def inversion_check(A, grid, samples_per_direction=16, slack=1e-9):
    """Compare Phi(A) with R^d minus i(A minus {0}), i(x) = x/|x|^2, on a
    log-spaced ladder of radii in [1e-3, 1e3].

    lam*theta lies in i(A minus {0}) iff theta/lam lies in A.  Ladder points
    within ``slack`` (relative) of the boundary radius 1/rho are skipped.
    """
    if samples_per_direction < 3:
        raise ValueError("need at least 3 samples per direction")
    lams = np.logspace(-3, 3, samples_per_direction)
    dirs = grid.directions
    dual = star_dual(A)
    boundary = reciprocal(A.rho(dirs))
    checked = violations = skipped = 0
    worst = None
    for lam in lams:
        near = np.abs(lam - boundary) <= slack * max(1.0, lam)
        in_inverse = A.contains(dirs / lam)
        in_dual = dual.contains(lam * dirs)
        bad = (in_inverse == in_dual) & ~near
        skipped += int(near.sum())
        checked += int((~near).sum())
        if np.any(bad):
            violations += int(bad.sum())
            if worst is None:
                i = int(np.argmax(bad))
                worst = {"direction": dirs[i].tolist(), "radius": float(lam)}
    return {"checked": checked, "violations": violations, "skipped_boundary": skipped,
            "first_violation": worst}


def support(K, theta):
    return K.support(theta)


@dataclass(frozen=True, eq=False)
class FlowerBody:
    body: StarBody
    seed: ConvexSeed


def flower(K, grid=None):
    """K♣: the star body with radial function h_K.  Rejects seeds whose support
    function is negative somewhere on the check grid (0 not in K)."""
    if not isinstance(K, ConvexSeed):
        raise TypeError("flower needs a ConvexSeed")
    grid = grid if grid is not None else make_grid(K.dimension, 256)
    if np.any(K.support(grid.directions) < 0):
        raise ValueError(f"support of {K.name} is negative somewhere: 0 is not in K")
    prof = ClosedForm(f"flower_{K.name}", dict(K.params), lambda t: K.support(t),
                      features=K.radial.features)
    body = StarBody(K.dimension, prof, f"flower({K.name})",
                    {"is_bounded": K.bounded, "is_closed_claim": K.bounded or None})
    return FlowerBody(body, K)


def polar(K, grid=None):
    """K° = Phi(K♣), radial function 1/h_K."""
    F = flower(K, grid)
    P = star_dual(F.body)
    return StarBody(P.dimension, P.profile, f"polar({K.name})", P.hints, dual_source=F.body)


def flower_union_check(K, grid, point_samples, prefixes=(0.25, 0.5, 1.0), tol=1e-12):
    """Check sup_x <x,theta>_+ <= h_K(theta) over samples x in K, and that the
    largest finite gap does not grow as more samples are used."""
    pts = np.atleast_2d(np.asarray(point_samples, dtype=float))
    if pts.shape[1] != K.dimension:
        raise ValueError("samples have the wrong dimension")
    body = K.as_body()
    outside = ~body.contains(pts)
    if np.any(outside):
        raise ValueError(f"{int(outside.sum())} samples lie outside {K.name}")
    h = K.support(grid.directions)
    gaps = []
    for frac in prefixes:
        m = max(1, int(round(frac * len(pts))))
        union = np.maximum(0.0, grid.directions @ pts[:m].T).max(axis=1)
        gaps.append((m, union))
    union = gaps[-1][1]
    finite = np.isfinite(h)
    excess = union[finite] - h[finite]
    gap = np.where(finite, h - union, INF)
    max_gaps = [float((h[finite] - u[finite]).max()) if finite.any() else 0.0 for _, u in gaps]
    return {"violations": int((excess > tol).sum()),
            "max_gap": float(gap[finite].max()) if finite.any() else 0.0,
            "infinite_directions": int((~finite).sum()),
            "prefix_sizes": [m for m, _ in gaps], "prefix_max_gaps": max_gaps,
            "monotone": bool(all(b <= a + tol for a, b in zip(max_gaps, max_gaps[1:])))}


def flower_distance(F1, F2, grid, J_max=J_MAX):
    """d♣(F1, F2) = d_AW(K1, K2) computed on the seeds."""
    for F in (F1, F2):
        if not isinstance(F, FlowerBody) or F.seed is None:
            raise ValueError("flower_distance needs flowers with seed provenance")
    return aw_distance(F1.seed.as_body(), F2.seed.as_body(), grid, J_max)


def phi_modulus_check(A, X, r0, grid):
    """delta(Phi A, Phi X) <= 2 delta(A, X) / r0^2 for bodies with rho >= r0.

    The hypotheses are recorded, not enforced.
    """
    r0 = float(r0)
    ra = A.rho(grid.directions)
    rx = X.rho(grid.directions)
    d = radial_metric(A, X, grid)
    lhs = radial_metric(star_dual(A), star_dual(X), grid)
    rhs = 2.0 * d / r0 ** 2
    pre = {"rho_A_at_least_r0": bool(ra.min() >= r0), "rho_X_at_least_r0": bool(rx.min() >= r0),
           "bounded": bool(np.all(np.isfinite(ra)) and np.all(np.isfinite(rx))),
           "delta_below_half_r0": bool(d < r0 / 2)}
    return {"lhs": lhs, "rhs": rhs, "holds": bool(lhs <= rhs * (1 + 1e-12) + 1e-15),
            "preconditions": pre, "preconditions_met": all(pre.values())}


def ball_containment_check(A, X, j0, grid, J_max=J_MAX):
    """If (1/j0)B is inside A and d_AW^r(A, X) < 1/(2 j0), then (1/(2 j0))B is
    inside X (strictly, on the grid)."""
    j0 = int(j0)
    ra = A.rho(grid.directions)
    rx = X.rho(grid.directions)
    value = radial_aw_distance(A, X, grid, J_max).value
    pre = bool(ra.min() >= 1.0 / j0)
    triggered = pre and value < 1.0 / (2 * j0)
    contained = bool(rx.min() > 1.0 / (2 * j0))
    return {"distance": value, "precondition": pre, "triggered": triggered,
            "min_rho_X": float(rx.min()), "holds": bool(contained or not triggered)}
