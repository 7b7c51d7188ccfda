import itertools
from fractions import Fraction

import numpy as np
import pytest

from graphnorms import GuardError
from graphnorms.graphs import (BipartiteGraph, GeneralGraph, biproduct, disjoint_union,
                               edge_power, edge_ratio, independence_number, induced_subgraph,
                               induced_subgraphs, make_complete_bipartite, make_even_cycle,
                               make_hypercube, make_path, make_triangle)
from oracles import brute_independence, isomorphic


def test_complete_bipartite():
    k2 = make_complete_bipartite(1, 1)
    assert (k2.x_size, k2.y_size, k2.edges) == (1, 1, ((0, 0),))
    k23 = make_complete_bipartite(2, 3)
    assert k23.m == 6
    assert k23.x_degrees() == [3, 3]
    assert k23.y_degrees() == [2, 2, 2]
    assert isomorphic(make_complete_bipartite(2, 2), make_even_cycle(2))


def test_even_cycles():
    c4 = make_even_cycle(2)
    assert (c4.x_size, c4.y_size, c4.m) == (2, 2, 4)
    assert c4.x_degrees() == [2, 2] and c4.y_degrees() == [2, 2]
    doubled = make_even_cycle(1)
    assert doubled.edges == ((0, 0), (0, 0))
    assert make_even_cycle(3).x_degrees() == [2, 2, 2]
    assert len(make_even_cycle(3).components()) == 1


def test_hypercubes():
    assert make_hypercube(1) == make_complete_bipartite(1, 1)
    q2 = make_hypercube(2)
    assert q2.n == 4 and q2.m == 4
    assert isomorphic(q2, make_even_cycle(2))
    q3 = make_hypercube(3)
    assert q3.n == 8 and q3.m == 12
    assert set(q3.labels[0]) == {"000", "011", "101", "110"}
    assert q3.x_degrees() == [3] * 4 and q3.y_degrees() == [3] * 4
    # every edge flips exactly one bit
    for a, b in q3.edges:
        diff = int(q3.labels[0][a], 2) ^ int(q3.labels[1][b], 2)
        assert bin(diff).count("1") == 1


def test_paths():
    assert make_path(1) == make_complete_bipartite(1, 1)
    p2 = make_path(2)
    assert (p2.x_size, p2.y_size) == (2, 1)
    assert p2.y_degrees() == [2]
    assert make_path(3).x_degrees() == [1, 2]
    assert make_path(4).m == 4 and len(make_path(4).components()) == 1


def test_graph_validation():
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, ((0, 1),))
    with pytest.raises(ValueError):
        GeneralGraph(2, ((1, 1),))
    with pytest.raises(ValueError):
        make_even_cycle(0)
    assert make_triangle().m == 3


def test_round_trip_dict():
    q3 = make_hypercube(3)
    again = BipartiteGraph.from_dict(q3.to_dict())
    assert again == q3 and again.labels == q3.labels


def test_operations():
    assert edge_power(make_complete_bipartite(1, 1), 4).edges == ((0, 0),) * 4
    c4sq = edge_power(make_even_cycle(2), 2)
    assert c4sq.m == 8 and c4sq.x_degrees() == [4, 4]
    u = disjoint_union(make_even_cycle(2), make_even_cycle(2))
    assert u.n == 8 and u.m == 8 and len(u.components()) == 2
    bp = biproduct(make_complete_bipartite(1, 2), make_even_cycle(2))
    assert bp.m == 8 and (bp.x_size, bp.y_size) == (2, 4)


def test_induced_subgraphs_small():
    k2 = make_complete_bipartite(1, 1)
    subs = {(s.x_size, s.y_size, s.edges) for s in induced_subgraphs(k2)}
    assert subs == {(1, 0, ()), (0, 1, ()), (1, 1, ((0, 0),))}
    c4 = make_even_cycle(2)
    subs = list(induced_subgraphs(c4))
    assert any(isomorphic(s, make_path(2)) for s in subs)
    assert sum(1 for s in subs if s.m == 1 and s.n == 2) == 4


def _max_edge_subset_ratio(g):
    """Max |E'|/(|V(E')|-1) over all nonempty edge subsets, with V(E') the touched vertices."""
    best = Fraction(0)
    for r in range(1, g.m + 1):
        for sub in itertools.combinations(g.edges, r):
            verts = {("x", a) for a, _ in sub} | {("y", b) for _, b in sub}
            best = max(best, Fraction(r, len(verts) - 1))
    return best


@pytest.mark.parametrize("g", [make_path(3), make_even_cycle(2), make_complete_bipartite(2, 3),
                               disjoint_union(make_even_cycle(2), make_path(1)),
                               edge_power(make_path(2), 2)])
def test_induced_sets_attain_max_ratio(g):
    induced = max(edge_ratio(s) for s in induced_subgraphs(g) if s.n >= 2)
    assert induced == _max_edge_subset_ratio(g)


def test_edge_ratio():
    assert edge_ratio(make_even_cycle(2)) == Fraction(4, 3)
    assert edge_ratio(BipartiteGraph(1, 0, ())) is None


@pytest.mark.parametrize("g", [make_path(5), make_even_cycle(3), make_hypercube(3),
                               make_complete_bipartite(2, 4),
                               disjoint_union(make_even_cycle(2), make_path(2))])
def test_independence_number(g):
    assert independence_number(g) == brute_independence(g)


def test_enumeration_guard():
    with pytest.raises(GuardError):
        list(induced_subgraphs(make_complete_bipartite(13, 12)))


def test_random_graph_invariants():
    rng = np.random.default_rng(5)
    for _ in range(20):
        nx, ny = rng.integers(1, 4, size=2)
        edges = [(int(rng.integers(nx)), int(rng.integers(ny))) for _ in range(rng.integers(1, 6))]
        g = BipartiteGraph(int(nx), int(ny), tuple(edges))
        assert sum(g.x_degrees()) == sum(g.y_degrees()) == g.m
        assert sum(g.multiplicities().values()) == g.m
        xs_all = sorted(v for xs, _ in g.components() for v in xs)
        assert xs_all == list(range(g.x_size))
        assert induced_subgraph(g, range(g.x_size), range(g.y_size)) == g
