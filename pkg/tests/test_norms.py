import numpy as np
import pytest

from graphnorms.graphs import (edge_power, make_complete_bipartite, make_even_cycle,
                               make_hypercube, make_path)
from graphnorms.linalg import jacobi_svd, singular_values
from graphnorms.norms import (cycle_schatten_gap, graph_norm, graph_rnorm, norm_report,
                              normalized_rnorm, schatten_norm, trace_holder_gap)
from oracles import numpy_schatten

K2 = make_complete_bipartite(1, 1)
K13 = make_complete_bipartite(1, 3)
C4 = make_even_cycle(2)
C6 = make_even_cycle(3)
SIGNS = np.array([[1.0, -1.0], [-1.0, 1.0]])


def test_plain_norm_examples():
    assert graph_norm(K13, SIGNS) == 0.0
    assert graph_norm(C4, np.eye(2)) == pytest.approx(2 ** 0.25, rel=1e-15)
    assert graph_norm(C6, np.diag([1.0, 2.0])) == pytest.approx(65 ** (1 / 6), rel=1e-15)


def test_rectified_norm_examples():
    assert graph_rnorm(K13, SIGNS) == pytest.approx(16 ** (1 / 3), rel=1e-15)
    assert graph_rnorm(K2, [[-1.0, 2.0], [3.0, -4.0]]) == 10.0
    w = np.random.default_rng(0).random((3, 4))
    assert graph_rnorm(C6, w) == pytest.approx(graph_norm(C6, w), rel=1e-14)


def test_normalized_rnorm_examples():
    for h in (K2, C4, make_hypercube(3), make_path(3)):
        assert normalized_rnorm(h, np.ones((3, 2))) == pytest.approx(1.0, rel=1e-14)
    assert normalized_rnorm(K2, np.eye(2)) == 0.5
    assert normalized_rnorm(C4, np.eye(2)) == pytest.approx(0.125 ** 0.25, rel=1e-15)


def test_zero_matrix():
    assert graph_norm(C4, np.zeros((2, 2))) == 0.0
    assert graph_rnorm(C4, np.zeros((2, 2))) == 0.0
    assert schatten_norm(np.zeros((3, 2)), 3) == 0.0


def test_norm_report():
    r = norm_report(C4, np.eye(2), "plain", "C4")
    assert r.to_dict() == {"graph": "C4", "kind": "plain", "m": 4, "hom": 2.0,
                           "value": graph_norm(C4, np.eye(2))}
    with pytest.raises(ValueError):
        norm_report(C4, np.eye(2), "weird")


def test_homogeneity_and_rectified_bound():
    rng = np.random.default_rng(1)
    for h in (K2, C4, C6, make_complete_bipartite(2, 3), make_path(3)):
        w = rng.standard_normal((3, 3))
        lam = float(rng.uniform(-3, 3))
        assert graph_norm(h, lam * w) == pytest.approx(abs(lam) * graph_norm(h, w), rel=1e-12)
        assert graph_norm(h, w) <= graph_rnorm(h, w) * (1 + 1e-12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_doubled_single_edge_is_entrywise_norm(k):
    w = np.random.default_rng(k).standard_normal((3, 4))
    expected = np.sum(np.abs(w) ** (2 * k)) ** (1 / (2 * k))
    assert graph_norm(edge_power(K2, 2 * k), w) == pytest.approx(expected, rel=1e-12)


def test_jacobi_svd_against_numpy():
    rng = np.random.default_rng(2)
    for shape in [(1, 1), (3, 3), (5, 2), (2, 7), (8, 8)]:
        a = rng.standard_normal(shape)
        np.testing.assert_allclose(singular_values(a),
                                   np.linalg.svd(a, compute_uv=False), rtol=1e-12, atol=1e-14)
    # rank-deficient input
    u, v = rng.standard_normal(5), rng.standard_normal(4)
    s = singular_values(np.outer(u, v))
    assert s[0] == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v), rel=1e-13)
    assert np.all(s[1:] < 1e-13 * s[0])


def test_jacobi_factors():
    a = np.random.default_rng(3).standard_normal((6, 4))
    w, v = jacobi_svd(a)
    np.testing.assert_allclose(a @ v, w, atol=1e-13)
    np.testing.assert_allclose(v.T @ v, np.eye(4), atol=1e-13)
    g = w.T @ w
    assert np.max(np.abs(g - np.diag(np.diag(g)))) < 1e-12


def test_schatten_examples():
    assert schatten_norm(np.diag([3.0, 4.0]), 2) == pytest.approx(5.0, rel=1e-15)
    for n in (1, 3, 5):
        for p in (1, 2, 3.5):
            assert schatten_norm(np.eye(n), p) == pytest.approx(n ** (1 / p), rel=1e-14)
    rng = np.random.default_rng(4)
    u, v = rng.standard_normal(4), rng.standard_normal(3)
    for p in (1, 2, 7):
        assert schatten_norm(np.outer(u, v), p) == pytest.approx(
            np.linalg.norm(u) * np.linalg.norm(v), rel=1e-12)


def test_schatten_against_numpy_and_transpose():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = rng.standard_normal((int(rng.integers(1, 7)), int(rng.integers(1, 7))))
        p = float(rng.uniform(1, 6))
        assert schatten_norm(a, p) == pytest.approx(numpy_schatten(a, p), rel=1e-12)
        assert schatten_norm(a.T, p) == pytest.approx(schatten_norm(a, p), rel=1e-12)


def test_cycle_schatten_examples():
    assert cycle_schatten_gap(2, np.eye(2)).value == pytest.approx(0.0, abs=1e-15)
    w = np.random.default_rng(6).standard_normal((4, 4))
    assert abs(cycle_schatten_gap(3, w).relative) <= 1e-8
    w = np.random.default_rng(7).standard_normal((3, 5))
    g = cycle_schatten_gap(1, w)
    assert g.lhs == pytest.approx(np.linalg.norm(w), rel=1e-13)
    assert abs(g.relative) <= 1e-12


def test_trace_holder():
    g = trace_holder_gap(np.eye(2), np.eye(2), 4, 4)
    assert g.value == pytest.approx(0.0, abs=1e-14)
    rng = np.random.default_rng(8)
    for _ in range(20):
        v, w = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        assert trace_holder_gap(v, w, 4, 4).value <= 1e-9
    z = trace_holder_gap(np.zeros((3, 3)), rng.standard_normal((3, 3)), 4, 4)
    assert z.lhs == 0.0 and z.rhs == 0.0
    with pytest.raises(ValueError):
        trace_holder_gap(np.eye(2), np.eye(3), 4, 4)
    with pytest.raises(ValueError):
        trace_holder_gap(np.eye(2), np.eye(2), 1, 1)
