"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible even under output capture)
and then asserts the same condition.
"""
import time

import numpy as np
import pytest

from starmetrics.bodies import (ball, sampled, seed_ball, seed_polygon, seed_segment,
                                seed_square, seed_strip, segment, whole_space)
from starmetrics.catalog import (corpus, moszynska_body, rotating_direction, truncated_parabola)
from starmetrics.checks import corpus_bodies, random_profile, run_suite
from starmetrics.convergence import analyze, separation_suite
from starmetrics.dualities import fixed_point_residual, flower, polar, star_dual
from starmetrics.euclidean import aw_distance, hausdorff
from starmetrics.extended import INF
from starmetrics.grid import grid_slack, make_grid
from starmetrics.radial import radial_aw_distance, radial_metric

from oracles import ball_polar_rho, parabola_rho, polar_rho

DEFAULT_COUNTS = {2: 2048, 3: 4096}


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
        assert ok, detail
    return emit


def _violations(res):
    return sum(v["violations"] for v in res.values())


def test_01_exact_enumerations(verdict):
    rows, ok = [], True
    for d, count in DEFAULT_COUNTS.items():
        g = make_grid(d, count)
        eps = grid_slack(g)
        t0 = time.perf_counter()
        awr = radial_aw_distance(ball(d), ball(d, 2.0), g).value
        aw = aw_distance(ball(d), ball(d, 2.0), g).value
        whole = radial_aw_distance(whole_space(d), ball(d), g).value
        dt = time.perf_counter() - t0
        ok &= awr == 0.5 and abs(aw - 0.5) <= eps and whole == 0.5 and dt < 1.0
        rows.append(f"d={d}: awr={awr} aw={aw:.6f} whole={whole} in {dt:.2f}s")
    verdict(1, "exact enumerations", ok, "; ".join(rows))


def test_02_inequality_suite(verdict):
    res = run_suite("inequalities", 200, seed=42)
    bad = _violations(res)
    checked = sum(v["checked"] for v in res.values())
    verdict(2, "inequality suite (400 random bodies, d=2,3)", bad == 0,
            f"{bad} violations over {checked} checks")


def test_03_metric_axioms(verdict):
    res = run_suite("metric-axioms", 200, seed=42)
    bad = _violations(res)
    verdict(3, "metric axioms and threshold query", bad == 0,
            f"{bad} violations; within_radial_aw compared "
            f"{res['within_radial_aw agrees']['checked']} times")


def _pointwise_fixed_points(count):
    """Solve 1/r = r on (0, inf) per direction by bisection of r - 1/r."""
    lo, hi = np.full(count, 1e-6), np.full(count, 1e6)
    for _ in range(200):
        mid = np.sqrt(lo * hi)
        pos = mid - 1.0 / mid > 0
        hi = np.where(pos, mid, hi)
        lo = np.where(pos, lo, mid)
    return np.sqrt(lo * hi)


def test_04_duality(verdict):
    t0 = time.perf_counter()
    g = make_grid(2, DEFAULT_COUNTS[2])
    pool = corpus_bodies(2) + corpus_bodies(3, ns=(1, 7, 60))
    inv_bad = 0
    for A in pool:
        gg = g if A.dimension == 2 else make_grid(3, 1024)
        gg = gg.with_directions(A.features) if len(A.features) else gg
        rho = A.rho(gg.directions)
        inv_bad += int(not np.array_equal(star_dual(star_dual(A)).rho(gg.directions), rho))
    ball_ok = np.array_equal(star_dual(ball(2)).rho(g.directions), ball(2).rho(g.directions))
    fixed = fixed_point_residual(ball(2), g)
    solved = _pointwise_fixed_points(len(g))
    solve_ok = fixed["fixed"] and fixed["all_one"] and np.all(np.abs(solved - 1) <= 1e-12)
    rng = np.random.default_rng(0)
    order_bad = 0
    for _ in range(50):
        a, b = random_profile(g, rng), random_profile(g, rng)
        lo, hi = sampled(g, np.minimum(a, b)), sampled(g, np.maximum(a, b))
        order_bad += int(not np.all(star_dual(hi).rho(g.directions)
                                    <= star_dual(lo).rho(g.directions)))
    dt = time.perf_counter() - t0
    ok = inv_bad == 0 and ball_ok and solve_ok and order_bad == 0 and dt < 1.0
    verdict(4, "duality", ok, f"involution failures {inv_bad}/{len(pool)}, phi(B)=B {ball_ok}, "
            f"fixed-point solve {solve_ok}, order reversal failures {order_bad}/50, "
            f"{dt:.2f}s")


POLAR_ORACLES = {
    "rB": (seed_ball(2, 2.5), lambda th: ball_polar_rho(2.5, th)),
    "square": (seed_square(), lambda th: polar_rho([[1, 1], [-1, 1], [-1, -1], [1, -1]], th)),
    "segment": (seed_segment([0.6, 0.8]), lambda th: polar_rho([[0, 0], [0.6, 0.8]], th)),
    "strip": (seed_strip(), lambda th: polar_rho([[0, 0], [1, 0]], th, rays=[[0, 1]])),
}


def test_05_decomposition_and_flowers(verdict):
    g = make_grid(2, DEFAULT_COUNTS[2])
    worst_prod = 0.0
    for K, _ in POLAR_ORACLES.values():
        h = K.support(g.directions)
        p = polar(K).rho(g.directions)
        m = np.isfinite(h) & (h > 0)
        worst_prod = max(worst_prod, float(np.max(np.abs(p[m] * h[m] - 1.0))))
    worst_oracle = 0.0
    probe = make_grid(2, 256).directions
    for K, oracle in POLAR_ORACLES.values():
        P = polar(K)
        for th in probe:
            want, got = oracle(th), P.rho(th)
            if np.isinf(want) or np.isinf(got):
                worst_oracle = max(worst_oracle, 0.0 if want == got else INF)
            else:
                worst_oracle = max(worst_oracle, abs(want - got))
    seeds = [seed_ball(2), seed_ball(2, 1.7), seed_square(), seed_segment([0.6, 0.8]),
             seed_polygon([[1, 0], [0, 2], [-1, 0.5], [-0.5, -1]])]
    gf = g.with_directions([[0.6, 0.8]])
    worst_iso = 0.0
    for a in seeds:
        for k in seeds:
            d_h = hausdorff(a.as_body(), k.as_body(), gf).value
            d_f = radial_metric(flower(a).body, flower(k).body, gf)
            worst_iso = max(worst_iso, abs(d_h - d_f))
    # one rounding step of h * (1/h) is the only slack on the product
    ok = worst_prod <= 2.3e-16 and worst_oracle <= 1e-9 and worst_iso <= 2 * grid_slack(gf)
    verdict(5, "decomposition and flowers", ok,
            f"max|rho_polar*h - 1| = {worst_prod:.1e}, polar vs oracle {worst_oracle:.1e}, "
            f"isometry gap {worst_iso:.2e} (2 eps_g = {2 * grid_slack(gf):.2e})")


def test_06_moszynska_separation(verdict):
    t0 = time.perf_counter()
    g = make_grid(2, 2048)
    eps = grid_slack(g)
    d_h, delta, d_phi = [], [], []
    for n in range(1, 61):
        A = moszynska_body(2, n)
        d_h.append(hausdorff(A, ball(2), g).value)
        delta.append(radial_metric(A, ball(2), g))
        d_phi.append(hausdorff(star_dual(A), ball(2), g).value)
    dt = time.perf_counter() - t0
    decreasing = all(a > b for a, b in zip(d_h, d_h[1:]))
    ok = (decreasing and d_h[-1] < 0.1 and min(delta) >= 0.75 - eps
          and min(d_phi) >= 3 - eps and dt < 30)
    verdict(6, "Moszynska separation", ok,
            f"d_H decreasing {decreasing}, final d_H {d_h[-1]:.4f} (needs < 0.1), "
            f"min delta {min(delta):.4f}, min d_H(phi A_n, B) {min(d_phi):.4f}, {dt:.1f}s")


def test_07_en_spikes(verdict):
    seq = corpus("en_spikes")
    r = analyze(seq, "origin", 60)
    floors = [v for _, v in r.notions["delta"].trace]
    worst = max(abs(v - 1 / np.e) for v in floors)
    pw = r.verdict("pointwise_radial")
    ok = pw == "converges" and worst <= 1e-3
    verdict(7, "E_n separation", ok,
            f"pointwise {pw}, max |delta(E_n, 0) - 1/e| over n=1..60 = {worst:.2e}")


def test_08_rotating_segments(verdict):
    base = make_grid(2, DEFAULT_COUNTS[2])
    e1 = np.array([1.0, 0.0])
    seg = segment(e1, 1.0)
    deltas, gaps = [], []
    for n in range(2, 61):
        u = rotating_direction(2, n)
        g = base.with_directions([u])
        S = segment(u, 1.0)
        deltas.append(radial_metric(seg, S, g))
        gaps.append(abs(hausdorff(seg, S, g).value - np.sqrt(1 - (u @ e1) ** 2)))
    eps = grid_slack(base)
    ok = all(d == 1.0 for d in deltas) and max(gaps) <= eps
    verdict(8, "rotating segments", ok,
            f"delta exactly 1 for all n: {all(d == 1.0 for d in deltas)}, "
            f"max |d_H - sqrt(1 - <theta_n,e_1>^2)| = {max(gaps):.2e} (eps_g {eps:.2e})")


def test_09_flower_wedge(verdict):
    seq = corpus("flower_wedge")
    r = analyze(seq, "strip", 60)
    aw = r.notions["aw"].trace
    fl = r.extras["flower"]
    all_inf = all(v == "inf" for _, v in fl["rho_e1"])
    ok = (r.verdict("aw") == "converges" and aw[-1][1] < 0.05 and all_inf
          and fl["limit_rho_e1"] == 1.0 and fl["topology_gap"])
    verdict(9, "flower-wedge discontinuity", ok,
            f"aw verdict {r.verdict('aw')}, d_AW(K_60, K) = {aw[-1][1]:.4f} (needs < 0.05), "
            f"rho_{{K_n flower}}(e_1) = inf for all n: {all_inf}, "
            f"rho_{{K flower}}(e_1) = {fl['limit_rho_e1']}, topology gap {fl['topology_gap']}")


def test_10_truncation(verdict):
    res = run_suite("truncation", 100, seed=42)
    # every AWRResult recorded while comparing corpus bodies pairwise
    g = make_grid(2, 1024)
    pool = corpus_bodies(2, ns=(1, 3, 20))
    recorded = bad = 0
    for i, a in enumerate(pool):
        for b in pool[i + 1:i + 4]:
            gg = g.with_directions(list(a.features) + list(b.features))
            for rec in (radial_aw_distance(a, b, gg), aw_distance(a, b, gg)):
                dj = [t[1] for t in rec.terms]
                recorded += 1
                bad += int(not all(x <= y for x, y in zip(dj, dj[1:])))
    suite_bad = _violations(res)
    ok = suite_bad == 0 and bad == 0
    verdict(10, "truncation lemmas", ok,
            f"suite violations {suite_bad}; delta_j monotonicity failures {bad}/{recorded}")


def test_11_truncated_parabola_audit(verdict):
    reports = separation_suite(make_grid(2, 1024), 60, names=["truncated_parabolas"])
    by_tag = {r.candidate: r for r in reports}
    flagged = bool(by_tag["origin"].extras.get("stated_limit_disagrees"))
    winner = by_tag["segment"].verdict("pointwise_radial")
    axis = all(truncated_parabola(n).rho(np.array([s, 0.0])) == 1.0
               for n in range(1, 61) for s in (1.0, -1.0))
    probe = make_grid(2, 96).with_directions([[1, 0], [-1, 0], [np.sqrt(0.5), np.sqrt(0.5)]])
    worst = 0.0
    for n in (1, 2, 5, 20, 60):
        P = truncated_parabola(n)
        for th in probe.directions:
            worst = max(worst, abs(P.rho(th) - parabola_rho(n, th)))
    ok = flagged and winner == "converges" and axis and worst <= 1e-9
    verdict(11, "truncated-parabola audit", ok,
            f"stated limit flagged {flagged}, segment candidate pointwise {winner}, "
            f"rho(+-e_1) = 1 for n=1..60 {axis}, raster oracle gap {worst:.1e}")
