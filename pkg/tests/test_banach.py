import numpy as np
import pytest

from graphnorms.banach import (Kp_closed_form, convexity_bound, convexity_probe, derive_Kp,
                               key_inequality_gap, key_probe, smoothness_probe, two_point_gap)
from graphnorms.graphs import make_complete_bipartite, make_even_cycle
from graphnorms.norms import graph_norm

C4 = make_even_cycle(2)
C6 = make_even_cycle(3)
K24 = make_complete_bipartite(2, 4)


def test_Kp_values():
    assert derive_Kp(2) == pytest.approx(2.0, abs=1e-9)
    assert derive_Kp(4) == pytest.approx(14.0, abs=1e-9)
    assert derive_Kp(3) == pytest.approx(6.0, abs=1e-9)
    for p in range(2, 9):
        assert derive_Kp(p) == pytest.approx(Kp_closed_form(p), rel=1e-9)
    assert Kp_closed_form(4) == 14 and Kp_closed_form(2) == 2
    with pytest.raises(ValueError):
        derive_Kp(1.5)


def test_Kp_nondecreasing():
    vals = [derive_Kp(p) for p in np.linspace(2, 8, 25)]
    assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))


def test_Kp_near_two_includes_limit():
    # p(p-1) is the y -> 0 limit; for p slightly above 2 the max is close to it
    assert derive_Kp(2.1) >= 2.1 * 1.1


@pytest.mark.parametrize("p", [2, 4, 6])
def test_two_point_inequality(p):
    rng = np.random.default_rng(p)
    for _ in range(500):
        x, y = sorted(rng.random(2) * 10, reverse=True)
        g = two_point_gap(x, y, p)
        assert g.value <= 1e-12 * max(1.0, g.rhs)


def test_convexity_bound_value():
    assert convexity_bound(1.0, 4) == pytest.approx(1 - (15 / 16) ** 0.25, rel=1e-14)
    assert convexity_bound(1.0, 4) == pytest.approx(0.016005, abs=1e-6)
    assert convexity_bound(2.0, 4) == 1.0


def test_key_gap_trivial_cases():
    rng = np.random.default_rng(0)
    w = rng.random((3, 3))
    z = key_inequality_gap(C4, w, np.zeros((3, 3)))
    assert z.value == 0.0
    same = key_inequality_gap(C4, w, w)
    assert abs(same.relative) <= 1e-12
    with pytest.raises(ValueError):
        key_inequality_gap(C4, w, np.ones((2, 3)))


@pytest.mark.parametrize("h", [C4, C6, make_complete_bipartite(2, 2), K24])
def test_key_inequality_random(h):
    for signed in (False, True):
        gaps = key_probe(h, 150, 3, seed=1, signed=signed)
        assert max(g.relative for g in gaps) <= 1e-9


def test_convexity_probe_c6():
    r = convexity_probe(C6, 0.5, 300, 3, seed=2)
    assert r.violations == 0 and r.admissible > 0
    assert r.convexity_infimum >= r.convexity_bound - 1e-9
    assert r.convexity_bound == pytest.approx(convexity_bound(0.5, 6), rel=1e-15)
    assert r.to_dict()["label"] == "per-sample bound checks"
    assert "checks" not in r.to_dict()


def test_convexity_probe_degenerate_epsilon():
    r = convexity_probe(C4, 2.0, 100, 3, seed=3)
    assert r.violations == 0 and r.admissible == 0 and r.convexity_infimum is None


def test_convexity_probe_validation():
    with pytest.raises(ValueError):
        convexity_probe(C4, 0.0, 10, 2)


def test_smoothness_probe_c4():
    r = smoothness_probe(C4, 0.5, 300, 3, seed=4)
    assert r.K_m == pytest.approx(14.0, abs=1e-9)
    assert r.violations == 0
    assert r.smoothness_bound == pytest.approx(14 * 0.25 / 4, rel=1e-9)


def test_smoothness_collinear_case_is_zero():
    x = np.random.default_rng(5).random((3, 3))
    x = x / graph_norm(C4, x)
    eps = 0.3
    excess = graph_norm(C4, x + eps * x) + graph_norm(C4, x - eps * x) - 2
    assert abs(excess) <= 1e-14


def test_probes_are_deterministic():
    a = convexity_probe(C4, 1.0, 50, 3, seed=9, signed=True)
    b = convexity_probe(C4, 1.0, 50, 3, seed=9, signed=True)
    assert a.checks == b.checks
