import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starmetrics.bodies import ball, halfspace, open_halfspace, sampled, segment, truncate
from starmetrics.catalog import moszynska_body, rotating_direction
from starmetrics.checks import random_profile
from starmetrics.euclidean import aw_distance, closedness_flags, excess, hausdorff, point_distance
from starmetrics.grid import grid_slack, make_grid
from starmetrics.radial import radial_distance

from oracles import point_segment_distance, segment_hausdorff

G2 = make_grid(2, 2048)
E1, E2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
EPS = grid_slack(G2)


def _random_body(grid, seed):
    return sampled(grid, random_profile(grid, np.random.default_rng(seed)))


def test_point_distance_examples():
    assert point_distance(2 * E1, ball(2), G2) == pytest.approx(1.0, abs=EPS)
    assert point_distance(-E1, segment(E1), G2) == 1.0
    assert point_distance(E2, segment(E1), G2) == 1.0
    assert point_distance([0.3, 0.2], ball(2), G2) == 0.0


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 1.0), st.floats(0, 2 * np.pi))
def test_point_distance_matches_segment_oracle(x, y, length, angle):
    u = np.array([np.cos(angle), np.sin(angle)])
    g = G2.with_directions([u])
    got = point_distance(np.array([x, y]), segment(u, length), g)
    assert got == pytest.approx(point_segment_distance([x, y], [0, 0], length * u), abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 1))
def test_ray_monotonicity_and_p4(seed, t):
    A = _random_body(G2, seed)
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(50, 2)) * 2
    assert np.all(point_distance(t * x, A, G2) <= point_distance(x, A, G2) + EPS)
    assert np.all(point_distance(x, A, G2) <= radial_distance(x, A))


def test_excess_examples():
    assert excess(ball(2, 2), ball(2), G2) == pytest.approx(1.0, abs=EPS)
    assert excess(ball(2), ball(2, 2), G2) == 0.0
    for n in (2, 5, 40):
        u = rotating_direction(2, n)
        g = G2.with_directions([u])
        expect = np.sqrt(1 - (u @ E1) ** 2)
        assert excess(segment(u, 1.0), segment(E1), g) == pytest.approx(expect, abs=EPS)


def test_hausdorff_examples():
    r = hausdorff(ball(2), ball(2, 2), G2)
    assert r.value == pytest.approx(1.0, abs=EPS)
    assert r.value == max(r.witness_forward[1], r.witness_backward[1])
    for n in (2, 3, 7, 60):
        u = rotating_direction(2, n)
        g = G2.with_directions([u])
        got = hausdorff(segment(E1), segment(u, 1.0), g).value
        assert got == pytest.approx(segment_hausdorff(E1, u), abs=EPS)
        assert got == pytest.approx(1 / n, abs=EPS)


def test_moszynska_hausdorff_decreases():
    g = G2.with_directions([E2])
    vals = [hausdorff(moszynska_body(2, n), ball(2), g).value for n in (1, 5, 10, 20, 40)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_unbounded_hausdorff_is_infinite():
    assert hausdorff(halfspace(E2), ball(2), G2).value == np.inf


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.3, 2.5))
def test_truncation_identity_for_point_distance(seed, eta):
    A = _random_body(G2, seed)
    A = type(A)(A.dimension, A.profile, A.name, dict(A.hints, is_closed_claim=True))
    rng = np.random.default_rng(seed)
    u = rng.normal(size=(100, 2))
    x = u / np.linalg.norm(u, axis=1)[:, None] * (eta * rng.random(100))[:, None]
    diff = np.abs(point_distance(x, truncate(A, eta), G2) - point_distance(x, A, G2))
    assert diff.max() <= grid_slack(G2, eta)


def test_aw_enumeration():
    r = aw_distance(ball(2), ball(2, 2), G2)
    assert r.value == pytest.approx(0.5, abs=EPS)
    assert r.attained_j == 2
    assert aw_distance(ball(2), ball(2), G2).value == 0.0


def test_closedness_flag():
    assert closedness_flags(ball(2), ball(2)) == ()
    r = aw_distance(open_halfspace(E2), halfspace(-E2), G2)
    assert "closedness_unverified" in r.flags
    assert "closedness_unverified" in aw_distance(_random_body(G2, 1), ball(2), G2).flags


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_inequalities_against_radial(seed):
    from starmetrics.radial import radial_aw_distance, radial_excess, radial_metric
    a, b = _random_body(G2, seed), _random_body(G2, seed + 11)
    slack = grid_slack(G2, 2.5)
    assert hausdorff(a, b, G2).value <= radial_metric(a, b, G2) + slack
    assert excess(a, b, G2) <= radial_excess(a, b, G2) + slack
    assert aw_distance(a, b, G2).value <= radial_aw_distance(a, b, G2).value + slack
