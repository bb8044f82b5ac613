"""Radial distance, radial metric and the segment discontinuity.

Run: python3 demos/01_radial_distances.py
"""
import numpy as np

from starmetrics import ball, make_grid, radial_distance, radial_metric, segment
from starmetrics.bodies import radial_sum
from starmetrics.catalog import en_spike, rotating_direction
from starmetrics.euclidean import point_distance
from starmetrics.radial import radial_continuity_diagnostic

grid = make_grid(2, 2048)
e1 = np.array([1.0, 0.0])
seg = segment(e1)

print("d_r measures how far a point overshoots the body along its own ray.")
for x in ([2.0, 0.0], [1.5, 0.0], [0.0, 0.5], [0.5, 1e-6]):
    print(f"  x = {x!s:14}  d_r(x, [0,e1]) = {radial_distance(x, seg):.6f}"
          f"   d(x, [0,e1]) = {point_distance(np.array(x), seg, grid):.6f}")
print("Off the segment's line d_r jumps to |x| while d stays small: d_r(., [0,e1]) is")
print("discontinuous because the radial function of a segment is.")
diag = radial_continuity_diagnostic(seg, grid.with_directions([e1]))
print(f"  largest neighbour jump of rho on the grid: {diag['rho_jump']}")

print("\nThe radial metric is the sup-distance of radial functions.")
print(f"  delta(B, 2B) = {radial_metric(ball(2), ball(2, 2), grid)}")
for n in (2, 10, 100):
    u = rotating_direction(2, n)
    g = grid.with_directions([u])
    print(f"  delta([0,e1], [0,theta_{n}]) = {radial_metric(seg, segment(u, 1.0), g)}")
print("Segments that rotate onto [0,e1] never get closer than 1 in delta.")

print("\nSpikes t*exp(-t), t = n|<theta,e1>|, keep height 1/e however thin they get:")
for n in (1, 5, 50):
    g = grid.with_directions([[1 / n, np.sqrt(1 - 1 / n ** 2)]])
    print(f"  n = {n:3d}: delta(E_n, {{0}}) = {radial_metric(en_spike(2, n), ball(2, 0.0), g):.6f}")

s = radial_sum(seg, ball(2))
print(f"\nRadial sum [0,e1] + B: rho(e1) = {s.rho(e1)}, rho(e2) = {s.rho(np.array([0, 1.0]))}")
