"""Radial and Euclidean set distances for star bodies, with star/flower/polar
dualities and a convergence lab."""
__version__ = "0.1.0"

from .bodies import (ConvexSeed, StarBody, ball, halfspace, origin, ray, sampled, segment,
                     seed_ball, seed_polygon, seed_segment, seed_square, seed_strip, truncate,
                     whole_space)
from .catalog import CORPUS_NAMES, corpus
from .convergence import analyze, separation_suite
from .dualities import flower, polar, star_dual
from .euclidean import aw_distance, hausdorff, point_distance
from .grid import SphereGrid, grid_slack, make_grid
from .radial import radial_aw_distance, radial_distance, radial_metric, within_radial_aw

__all__ = [
    "ConvexSeed", "StarBody", "SphereGrid", "CORPUS_NAMES", "analyze", "aw_distance", "ball",
    "corpus", "flower", "grid_slack", "halfspace", "hausdorff", "make_grid", "origin",
    "point_distance", "polar", "radial_aw_distance", "radial_distance", "radial_metric", "ray",
    "sampled", "seed_ball", "seed_polygon", "seed_segment", "seed_square", "seed_strip",
    "segment", "separation_suite", "star_dual", "truncate", "whole_space", "within_radial_aw",
]
