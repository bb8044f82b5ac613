"""Finite direction sets on the unit sphere.

Every sup over the sphere in this package is a max over one of these grids.
The ``resolution`` of a grid is an upper bound on its angular covering radius:
each unit vector lies within that angle of some grid direction.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import ndtri
from scipy.stats import qmc

# covering constants c in resolution = c * count**(-1/(d-1)); Monte Carlo
# probing gives about 2.7 for the Fibonacci lattice and about 3.4 for the
# scrambled Halton directions in d = 4, so both are rounded up.
FIBONACCI_COVERING = 3.0
HALTON_COVERING = 5.0

NEIGHBOURS = 32


@dataclass(frozen=True, eq=False)
class SphereGrid:
    dimension: int
    directions: np.ndarray = field(repr=False)
    resolution: float
    seed: int = 0
    count: int = 0
    symmetric: bool = False

    def __len__(self):
        return len(self.directions)

    @property
    def spec(self):
        return {"count": self.count, "seed": self.seed, "symmetric": self.symmetric}

    def with_directions(self, extra):
        """Same grid with ``extra`` directions appended (duplicates skipped).

        Adding directions can only shrink the covering radius, so the
        resolution bound is kept.
        """
        extra = np.atleast_2d(np.asarray(extra, dtype=float))
        if extra.size == 0:
            return self
        if extra.shape[1] != self.dimension:
            raise ValueError("extra directions have the wrong dimension")
        extra = extra / np.linalg.norm(extra, axis=1)[:, None]
        keep = []
        current = self.directions
        for u in extra:
            if np.min(np.linalg.norm(current - u, axis=1)) > 1e-12:
                keep.append(u)
                current = np.vstack([current, u])
        if not keep:
            return self
        dirs = np.vstack([self.directions, np.array(keep)])
        dirs.setflags(write=False)
        return SphereGrid(self.dimension, dirs, self.resolution, self.seed,
                          self.count, self.symmetric)

    @cached_property
    def tree(self):
        return cKDTree(self.directions)

    @cached_property
    def neighbours(self):
        """(indices, angles) of the nearest directions to each grid direction.

        Row i is sorted by angle and starts with i itself.
        """
        k = min(NEIGHBOURS + 1, len(self))
        chord, idx = self.tree.query(self.directions, k=k)
        angles = 2.0 * np.arcsin(np.clip(chord / 2.0, 0.0, 1.0))
        return idx, angles


def _circle(count):
    t = 2.0 * np.pi * np.arange(count) / count
    dirs = np.column_stack([np.cos(t), np.sin(t)])
    # exact zeros on the axes so that e_1, e_2, -e_1, -e_2 are represented exactly
    dirs[np.abs(dirs) < 1e-15] = 0.0
    if count % 2 == 0:
        # the second half is the exact negation of the first half
        dirs[count // 2:] = -dirs[:count // 2]
    return dirs


def _fibonacci(count, upper_only=False):
    i = np.arange(count)
    if upper_only:
        z = (i + 0.5) / count
    else:
        z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(1.0 - z * z)
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _halton(d, count, seed):
    u = qmc.Halton(d, scramble=True, seed=seed).random(count)
    g = ndtri(np.clip(u, 1e-12, 1 - 1e-12))
    return g / np.linalg.norm(g, axis=1)[:, None]


def make_grid(d, count, seed=0, symmetric=False):
    """Deterministic direction grid.

    d = 2: ``count`` equally spaced angles starting at e_1, resolution pi/count.
    d = 3: Fibonacci lattice.  d >= 4: scrambled Halton points pushed to the
    sphere through the Gaussian quantile map.  With ``symmetric`` the grid is
    closed under x -> -x (``count`` must then be even).
    """
    d = int(d)
    count = int(count)
    if d < 2:
        raise ValueError("sphere grids need d >= 2")
    if count < 4:
        raise ValueError("sphere grids need at least 4 directions")
    if symmetric and count % 2:
        raise ValueError("a symmetric grid needs an even count")
    if d == 2:
        dirs = _circle(count)
        resolution = np.pi / count
    else:
        half = count // 2 if symmetric else count
        if d == 3:
            dirs = _fibonacci(half, upper_only=symmetric)
            resolution = FIBONACCI_COVERING / np.sqrt(count)
        else:
            dirs = _halton(d, half, seed)
            resolution = HALTON_COVERING * count ** (-1.0 / (d - 1))
        if symmetric:
            dirs = np.vstack([dirs, -dirs])
    dirs = np.ascontiguousarray(dirs, dtype=float)
    dirs.setflags(write=False)
    return SphereGrid(d, dirs, float(min(resolution, np.pi)), int(seed), count, bool(symmetric))


def grid_slack(grid, lipschitz=1.0):
    """Grid slack eps_g = L * resolution for a quantity with angular Lipschitz bound L."""
    return float(lipschitz) * grid.resolution


def unit(x):
    """x / |x| for nonzero x."""
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x)
    if n == 0:
        raise ValueError("the zero vector has no direction")
    return x / n


def basis(d, i):
    e = np.zeros(d)
    e[i] = 1.0
    return e
