"""The truncation loop behind both Attouch-Wets distances.

Run: python3 demos/02_attouch_wets.py
"""
from starmetrics import aw_distance, ball, make_grid, radial_aw_distance, whole_space
from starmetrics.radial import epsilon_index, within_radial_aw

grid = make_grid(2, 2048)


def show(label, res):
    print(f"{label}: value {res.value}, attained at j = {res.attained_j}, "
          f"stop: {res.stop_cause}")
    for j, dj, term in res.terms[:4]:
        print(f"    j = {j}: distance of truncations {dj:.6f}, min(1/j, .) = {term:.6f}")


show("d_AW^r(B, 2B)", radial_aw_distance(ball(2), ball(2, 2), grid))
show("d_AW(B, 2B)  ", aw_distance(ball(2), ball(2, 2), grid))
show("d_AW^r(R^2, B)", radial_aw_distance(whole_space(2), ball(2), grid))
same = radial_aw_distance(ball(2), ball(2), grid)
print(f"d_AW^r(B, B): value {same.value}, loop capped at j = {same.truncated_at}")

print("\nThe threshold query reads a single truncation level j(eps):")
for eps in (0.6, 0.5, 0.34):
    print(f"  eps = {eps}: j = {epsilon_index(eps)}, "
          f"d_AW^r(B, 2B) < eps? {within_radial_aw(ball(2), ball(2, 2), eps, grid)}")
