"""Sidorenko-type comparisons under uniform probability measures on finite index sets."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._common import Gap, GuardError
from .graphs import (BipartiteGraph, make_complete_bipartite, make_even_cycle, make_hypercube,
                     make_path)
from .homs import EdgeDecoration, as_weight, hom_density, weighted_sum
from .norms import normalized_rnorm

MAX_CHAIN_CUBE = 4


def _check_nonnegative(w) -> np.ndarray:
    w = as_weight(w)
    if np.any(w < 0):
        raise ValueError("expected a nonnegative weight matrix")
    return w


def sidorenko_gap(h: BipartiteGraph, w, engine: str = "elim") -> Gap:
    """t_H(w) against t_K2(w)^m."""
    w = _check_nonnegative(w)
    return Gap(hom_density(h, w, engine), float(np.mean(w)) ** h.m)


def edge_subgraph(h: BipartiteGraph, indices: Sequence[int]) -> BipartiteGraph:
    """The sub-multigraph keeping edge instances ``indices`` and all vertices."""
    return BipartiteGraph(h.x_size, h.y_size, tuple(h.edges[i] for i in indices))


def subgraph_norm_monotonicity_gap(h: BipartiteGraph, g: BipartiteGraph, w,
                                   engine: str = "elim") -> Gap:
    """Normalised rectified norm of H against that of its edge sub-multiset G.

    G must live on H's vertex sets; vertices it leaves isolated contribute a
    factor 1 under normalisation.
    """
    if (g.x_size, g.y_size) != (h.x_size, h.y_size):
        raise ValueError("subgraph must share the vertex sets of H")
    if Counter(g.edges) - Counter(h.edges):
        raise ValueError("G is not an edge sub-multiset of H")
    return Gap(normalized_rnorm(h, w, engine), normalized_rnorm(g, w, engine))


def hypercube_chain(w, n_max: int, engine: str = "elim") -> list[float]:
    """Normalised rectified norms of Q_1, ..., Q_n_max."""
    if n_max > MAX_CHAIN_CUBE:
        raise GuardError(f"hypercube chain limited to Q_{MAX_CHAIN_CUBE}")
    return [normalized_rnorm(make_hypercube(n), w, engine) for n in range(1, n_max + 1)]


def _path_chain(w, lengths, engine) -> list[float]:
    w = as_weight(w)
    if w.shape[0] != w.shape[1] or not np.allclose(w, w.T, rtol=0.0, atol=1e-12):
        raise ValueError("path chains need a symmetric square matrix")
    return [normalized_rnorm(make_path(k), w, engine) for k in lengths]


def even_path_chain(w, m_max: int, engine: str = "elim") -> list[float]:
    """Normalised rectified norms of P_2, P_4, ..., P_{2 m_max}."""
    return _path_chain(w, [2 * n for n in range(1, m_max + 1)], engine)


def odd_path_chain(w, m_max: int, engine: str = "elim") -> list[float]:
    """Normalised rectified norms of P_1, P_3, ...; exploratory, no expected ordering."""
    return _path_chain(w, [2 * n - 1 for n in range(1, m_max + 1)], engine)


@dataclass(frozen=True)
class VertexDecoration:
    f: tuple[np.ndarray, ...]  # one vector over rows per X-vertex
    g: tuple[np.ndarray, ...]  # one vector over columns per Y-vertex

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(np.asarray(v, dtype=np.float64) for v in self.f))
        object.__setattr__(self, "g", tuple(np.asarray(v, dtype=np.float64) for v in self.g))


def cube_claim_gap(n: int, vd: VertexDecoration, d: EdgeDecoration, engine: str = "elim") -> Gap:
    """Vertex- and edge-decorated cube sum against the geometric mean of its collapsed sums.

    For the edge e = (a, b), the collapsed sum uses w_e on every edge, f_a on
    every X-vertex and g_b on every Y-vertex.  Absolute values are taken
    throughout.
    """
    cube = make_hypercube(n)
    if d.graph != cube:
        raise ValueError(f"edge decoration must live on Q_{n}")
    rows, cols = d.shape
    if len(vd.f) != cube.x_size or len(vd.g) != cube.y_size:
        raise ValueError("vertex decoration sizes do not match the cube")
    if any(v.shape != (rows,) for v in vd.f) or any(v.shape != (cols,) for v in vd.g):
        raise ValueError("vertex vectors must match the matrix dimensions")
    ws = [np.abs(w) for w in d.weights]
    fs = [np.abs(v) for v in vd.f]
    gs = [np.abs(v) for v in vd.g]
    lhs = weighted_sum(cube, ws, fs, gs, engine=engine)
    logs = []
    for (a, b), w in zip(cube.edges, ws):
        s = weighted_sum(cube, [w] * cube.m, [fs[a]] * cube.x_size, [gs[b]] * cube.y_size,
                         engine=engine)
        logs.append(math.log(s) if s > 0 else -math.inf)
    rhs = 0.0 if min(logs) == -math.inf else math.exp(math.fsum(logs) / cube.m)
    return Gap(lhs, rhs)


def sidorenko_suite_graphs() -> dict[str, BipartiteGraph]:
    return {"K13": make_complete_bipartite(1, 3), "K22": make_complete_bipartite(2, 2),
            "K33": make_complete_bipartite(3, 3), "C6": make_even_cycle(3),
            "Q2": make_hypercube(2), "Q3": make_hypercube(3)}
