import random

import pytest

from narrowcomb.group import (IDENTITY, heisenberg_matrix, nf_heisenberg, nf_inverse, nf_mul,
                              nf_mul_gen, normalize, params_for)
from narrowcomb.metric import (BallBudgetExceeded, OutOfBall, build_ball, check_geodesic_two_sided,
                               check_recursive, dist, geodesic_word)
from narrowcomb.words import GENERATORS, X, Y, Z, power

_GEN_MATRICES = {X: (1, 0, 0), -X: (-1, 0, 0), Y: (0, 1, 0), -Y: (0, -1, 0), Z: (0, 0, 1), -Z: (0, 0, -1)}


def matrix_ball_spheres(radius):
    """Independent BFS in the integral Heisenberg group on matrix triples."""
    seen = {(0, 0, 0): 0}
    frontier = [(0, 0, 0)]
    for d in range(1, radius + 1):
        nxt = []
        for a in frontier:
            for g in _GEN_MATRICES.values():
                b = (a[0] + g[0], a[1] + g[1], a[2] + g[2] + a[0] * g[1])
                if b not in seen:
                    seen[b] = d
                    nxt.append(b)
        frontier = nxt
    return seen


def test_ball_small_radii():
    p1 = params_for(1)
    assert len(build_ball(p1, 0)) == 1
    assert len(build_ball(p1, 1)) == 7


def test_ball_matches_matrix_bfs():
    ball = build_ball(params_for(1), 5)
    oracle = matrix_ball_spheres(5)
    assert len(ball) == len(oracle)
    for g, d in ball.entries.items():
        assert oracle[nf_heisenberg(g)] == d


def test_z_powers_distance():
    ball = build_ball(params_for(1), 4)
    assert dist(normalize(power(Z, 4), ball.params), ball) == 4
    assert dist(IDENTITY, ball) == 0
    assert dist(normalize((Z,), ball.params), ball) == 1
    assert dist(normalize((X, Y), ball.params), ball) == 2


def test_out_of_ball():
    ball = build_ball(params_for(1), 2)
    with pytest.raises(OutOfBall):
        dist(normalize(power(X, 3), ball.params), ball)
    with pytest.raises(OutOfBall):
        geodesic_word(normalize(power(X, 3), ball.params), ball)


def test_budget_guard():
    with pytest.raises(BallBudgetExceeded):
        build_ball(params_for(1), 6, budget=100)
    with pytest.raises(ValueError):
        build_ball(params_for(1), -1)


def test_geodesic_word_examples():
    ball = build_ball(params_for(1), 3)
    assert geodesic_word(IDENTITY, ball) == ()
    assert geodesic_word(normalize((X,), ball.params), ball) == (X,)
    assert geodesic_word(normalize((Z, Z), ball.params), ball) == (Z, Z)


def test_ball_invariants(params):
    ball = build_ball(params, 4)
    for g, d in ball.entries.items():
        w = geodesic_word(g, ball)
        assert len(w) == d and normalize(w, params) == g
        assert ball.entries[nf_inverse(g, params)] == d
        if d:
            assert any(ball.entries.get(nf_mul_gen(g, a, params)) == d - 1 for a in GENERATORS)
        for a in GENERATORS:
            h = nf_mul_gen(g, a, params)
            if h in ball:
                assert abs(ball.entries[h] - d) <= 1


def test_triangle_inequality(params):
    ball = build_ball(params, 4)
    small = [g for g, d in ball.entries.items() if d <= 2]
    rng = random.Random(2)
    for _ in range(2000):
        g, h = rng.choice(small), rng.choice(small)
        gh = nf_mul(g, h, params)
        assert ball.entries[gh] <= ball.entries[g] + ball.entries[h]


def test_check_recursive_examples():
    p1, p2 = params_for(1), params_for(2)
    z4 = normalize(power(Z, 4), p1)
    assert z4.length() == 4 <= p1.f(4) == 20
    assert normalize((Y, Y), p2).length() == 2 <= p2.f(2) == 14
    assert p1.f(0) == 0
    assert check_recursive(p1, 4).ok
    assert check_recursive(p2, 2).ok


def test_check_recursive_reports_violations():
    # a shrunken polynomial must be caught
    class Tight(type(params_for(1))):
        def f(self, d):
            return d

    report = check_recursive(Tight(1), 3)
    assert not report.ok
    assert all(v.fields[2] > v.fields[1] for v in report.violations)


def test_geodesic_two_sided_small():
    report = check_geodesic_two_sided(params_for(1), 2)
    assert report.ok and report.checked > 0


def test_geodesic_two_sided_example_point():
    p1 = params_for(1)
    ball = build_ball(p1, 3)
    x = normalize((X,), p1)
    path_a = geodesic_word(x, ball)
    path_b = geodesic_word(normalize((X, X), p1), ball)
    assert (path_a, path_b) == ((X,), (X, X))
    gap = nf_mul(nf_inverse(normalize(path_a[:1], p1), p1), normalize(path_b[:1], p1), p1)
    assert ball.entries[gap] <= (len(path_a) + len(path_b)) / 2 + 1
