"""Star duality, flowers and polars.

Run: python3 demos/03_duality_and_flowers.py
"""
import numpy as np

from starmetrics import ball, flower, make_grid, polar, segment, star_dual
from starmetrics.bodies import seed_ray, seed_segment, seed_square, seed_strip
from starmetrics.catalog import moszynska_body
from starmetrics.dualities import inversion_check
from starmetrics.euclidean import hausdorff

grid = make_grid(2, 2048)
e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
diag = np.array([np.sqrt(0.5), np.sqrt(0.5)])

print("Phi inverts the radial function.")
print(f"  Phi(B) is B: {np.array_equal(star_dual(ball(2)).rho(grid.directions), np.ones(len(grid)))}")
P = star_dual(segment(e1))
print(f"  Phi([0,e1]): rho(e1) = {P.rho(e1)}, rho(e2) = {P.rho(e2)}")
A = moszynska_body(2, 10)
print(f"  Phi(Phi(A)) is A: {star_dual(star_dual(A)) is A}")
print(f"  inversion check on A: {inversion_check(A, grid)['violations']} violations")

print("\nPhi is not continuous for the Hausdorff distance:")
for n in (5, 20, 60):
    A = moszynska_body(2, n)
    print(f"  n = {n:2d}: d_H(A_n, B) = {hausdorff(A, ball(2), grid).value:.4f}, "
          f"d_H(Phi A_n, B) = {hausdorff(star_dual(A), ball(2), grid).value:.4f}")

print("\nThe flower of K has radial function h_K, and K polar = Phi(flower K).")
x = np.array([0.6, 0.8])
F = flower(seed_segment(x)).body
print(f"  flower([0,x]) at theta = x: {F.rho(x):.6f} (= |x|), at -x: {F.rho(-x)}")
R = flower(seed_ray(e1)).body
print(f"  flower(ray e1): rho(diag) = {R.rho(diag)}, rho(-e1) = {R.rho(-e1)}")
sq = polar(seed_square())
print(f"  polar(square): rho(e1) = {sq.rho(e1)}, rho(diag) = {sq.rho(diag):.6f} "
      f"(= 1/sqrt(2))")
st = polar(seed_strip())
print(f"  polar(strip):  rho(e1) = {st.rho(e1)}, rho(-e1) = {st.rho(-e1)}, rho(e2) = {st.rho(e2)}")
