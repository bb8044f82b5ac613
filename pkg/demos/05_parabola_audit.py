"""Which body do the truncated parabolas converge to?

P_n = {-1 <= x <= 1, 0 <= y <= x^2/n}.  Its radial function keeps the value 1 at
+-e_1, so the pointwise radial limit is the segment [-e_1, e_1] rather than the
origin.  The suite tests both candidates.

Run: python3 demos/05_parabola_audit.py
"""
import numpy as np

from starmetrics import make_grid, separation_suite
from starmetrics.catalog import truncated_parabola, truncated_parabola_contains

for n in (1, 10, 100):
    P = truncated_parabola(n)
    print(f"n = {n:3d}: rho(e1) = {P.rho(np.array([1.0, 0]))}, "
          f"(1, 0) in P_n: {bool(truncated_parabola_contains(n, [1.0, 0.0])[0])}")

for r in separation_suite(make_grid(2, 1024), 60, names=["truncated_parabolas"]):
    print(f"\ncandidate {r.candidate}:")
    for notion, entry in r.notions.items():
        print(f"  {notion:17s} {entry.verdict}")
    for note in r.notes:
        print(f"  note: {note}")
