"""Homomorphism sums over weight matrices.

Two engines evaluate the same finite sum.  ``naive`` enumerates every vertex
assignment (vectorised in chunks); ``elim`` runs variable elimination over the
vertices of H, treating each edge weight as a 2-ary factor, in an order chosen
by the min-fill heuristic.

Vertex ids inside the engine: X vertex ``i`` is ``i``, Y vertex ``j`` is
``x_size + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ._common import GuardError
from .graphs import BipartiteGraph, GeneralGraph

NAIVE_STATE_LIMIT = 10 ** 9
TENSOR_ENTRY_LIMIT = 10 ** 8
_CHUNK = 1 << 16

ENGINES = ("naive", "elim")


def as_weight(w, name: str = "w") -> np.ndarray:
    """Validate a weight matrix: 2-D, nonempty, finite, float64."""
    arr = np.array(w, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a nonempty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True)
class EdgeDecoration:
    """One weight matrix per edge instance, aligned with ``graph.edges``."""

    graph: BipartiteGraph
    weights: tuple[np.ndarray, ...]

    def __post_init__(self):
        ws = tuple(as_weight(w, f"w_{i}") for i, w in enumerate(self.weights))
        if len(ws) != self.graph.m:
            raise ValueError(f"decoration has {len(ws)} matrices for {self.graph.m} edges")
        if len({w.shape for w in ws}) > 1:
            raise ValueError("decoration matrices must share one shape")
        object.__setattr__(self, "weights", ws)

    @property
    def shape(self) -> tuple[int, int]:
        return self.weights[0].shape

    @classmethod
    def uniform(cls, graph: BipartiteGraph, w) -> "EdgeDecoration":
        return cls(graph, tuple(w for _ in range(graph.m)))

    def absolute(self) -> "EdgeDecoration":
        return EdgeDecoration(self.graph, tuple(np.abs(w) for w in self.weights))


@dataclass(frozen=True)
class EliminationPlan:
    order: tuple[int, ...]
    scopes: tuple[tuple[int, ...], ...]  # scope of the factor produced at each step
    width: int


# ---------------------------------------------------------------------------
# planning

def _interaction(n_vars: int, pairs) -> list[set]:
    adj = [set() for _ in range(n_vars)]
    for a, b in pairs:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _fill_in(adj: list[set], v: int, alive: set) -> int:
    nbrs = sorted(adj[v] & alive)
    return sum(1 for i, a in enumerate(nbrs) for b in nbrs[i + 1:] if b not in adj[a])


def simulate_order(n_vars: int, pairs, order: Sequence[int]) -> EliminationPlan:
    """Scopes and width obtained by eliminating vertices in ``order``."""
    adj = _interaction(n_vars, pairs)
    alive = set(range(n_vars))
    scopes = []
    for v in order:
        nbrs = sorted(adj[v] & alive)
        for a in nbrs:
            adj[a].update(b for b in nbrs if b != a)
        alive.discard(v)
        scopes.append(tuple(nbrs))
    if alive:
        raise ValueError("order does not eliminate every vertex")
    width = max((len(s) for s in scopes), default=0)
    return EliminationPlan(tuple(order), tuple(scopes), width)


def _min_fill_order(n_vars: int, pairs) -> list[int]:
    adj = _interaction(n_vars, pairs)
    alive = set(range(n_vars))
    order = []
    while alive:
        # ties go to the lowest vertex index
        v = min(sorted(alive), key=lambda a: _fill_in(adj, a, alive))
        nbrs = adj[v] & alive
        for a in nbrs:
            adj[a].update(b for b in nbrs if b != a)
        alive.discard(v)
        order.append(v)
    return order


def _vertex_pairs(h: BipartiteGraph):
    return [(xi, h.x_size + yj) for xi, yj in h.edges]


def plan_elimination(h: Union[BipartiteGraph, GeneralGraph]) -> EliminationPlan:
    if isinstance(h, GeneralGraph):
        n_vars, pairs = h.v_size, list(h.edges)
    else:
        n_vars, pairs = h.n, _vertex_pairs(h)
    return simulate_order(n_vars, pairs, _min_fill_order(n_vars, pairs))


# ---------------------------------------------------------------------------
# generic evaluation over (scope, array) factors

def _contract(domains: Sequence[int], factors, order: Sequence[int]) -> float:
    pending = [(tuple(s), np.asarray(a)) for s, a in factors]
    scalar = 1.0
    for v in order:
        touching = [f for f in pending if v in f[0]]
        if not touching:
            scalar *= domains[v]
            continue
        pending = [f for f in pending if v not in f[0]]
        used = sorted({u for s, _ in touching for u in s})
        local = {u: i for i, u in enumerate(used)}  # einsum allows only 52 labels
        out = tuple(u for u in used if u != v)
        operands = []
        for s, a in touching:
            operands.extend((a, [local[u] for u in s]))
        pending.append((out, np.einsum(*operands, [local[u] for u in out], optimize=True)))
    for s, a in pending:
        scalar *= float(a)
    return float(scalar)


def _naive(domains: Sequence[int], factors, compensated: bool = False) -> float:
    total_states = math.prod(domains)
    if total_states > NAIVE_STATE_LIMIT:
        raise GuardError(f"naive engine refuses {total_states} states "
                         f"(limit {NAIVE_STATE_LIMIT})")
    factors = [(tuple(s), np.asarray(a)) for s, a in factors]
    partial = []
    total = 0.0
    for start in range(0, total_states, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total_states))
        idx = np.unravel_index(flat, tuple(domains)) if domains else ()
        terms = np.ones(flat.shape[0])
        for s, a in factors:
            terms = terms * a[tuple(idx[v] for v in s)]
        if compensated:
            partial.append(math.fsum(terms))
        else:
            total += float(terms.sum())
    return math.fsum(partial) if compensated else total


def evaluate(domains, factors, engine: str = "elim", order=None,
             compensated: bool = False) -> float:
    if engine == "naive":
        return _naive(domains, factors, compensated)
    if engine == "elim":
        if order is None:
            pairs = [s for s, _ in factors if len(s) == 2]
            order = _min_fill_order(len(domains), pairs)
        return _contract(domains, factors, order)
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


# ---------------------------------------------------------------------------
# public sums

def _bipartite_domains(h: BipartiteGraph, shape) -> list[int]:
    return [shape[0]] * h.x_size + [shape[1]] * h.y_size


def hom_sum(h: BipartiteGraph, w, engine: str = "elim", compensated: bool = False) -> float:
    """h_H(w): sum over all maps X -> rows, Y -> cols of the product of edge weights.

    Parallel edges contribute pointwise powers of ``w``.
    """
    w = as_weight(w)
    factors = [((xi, h.x_size + yj), w ** k) for (xi, yj), k in sorted(h.multiplicities().items())]
    return evaluate(_bipartite_domains(h, w.shape), factors, engine, compensated=compensated)


def weighted_sum(h: BipartiteGraph, edge_weights: Sequence[np.ndarray],
                 x_weights: Optional[Sequence[np.ndarray]] = None,
                 y_weights: Optional[Sequence[np.ndarray]] = None,
                 engine: str = "elim", compensated: bool = False) -> float:
    """Decorated sum with optional per-vertex weight vectors.

    Each edge instance keeps its own factor (the naive engine multiplies them
    one by one; the eliminating engine merges parallel instances first).
    """
    shape = edge_weights[0].shape
    if engine == "naive":
        factors = [((xi, h.x_size + yj), w) for (xi, yj), w in zip(h.edges, edge_weights)]
    else:
        merged: dict = {}
        for (xi, yj), w in zip(h.edges, edge_weights):
            key = (xi, h.x_size + yj)
            merged[key] = merged[key] * w if key in merged else w
        factors = sorted(merged.items(), key=lambda kv: kv[0])
    for i, f in enumerate(x_weights or ()):
        factors.append(((i,), np.asarray(f, dtype=np.float64)))
    for j, g in enumerate(y_weights or ()):
        factors.append(((h.x_size + j,), np.asarray(g, dtype=np.float64)))
    return evaluate(_bipartite_domains(h, shape), factors, engine, compensated=compensated)


def hom_sum_decorated(d: EdgeDecoration, engine: str = "elim", compensated: bool = False) -> float:
    return weighted_sum(d.graph, d.weights, engine=engine, compensated=compensated)


def hom_sum_symmetric(h: GeneralGraph, w, engine: str = "elim") -> float:
    """h_H(w) for an arbitrary graph H and a symmetric square matrix w."""
    w = as_weight(w)
    if w.shape[0] != w.shape[1] or not np.allclose(w, w.T, rtol=0.0, atol=1e-12):
        raise ValueError("symmetric hom sum needs a symmetric square matrix")
    factors = [(e, w) for e in h.edges]
    return evaluate([w.shape[0]] * h.v_size, factors, engine)


def hom_density(h: Union[BipartiteGraph, GeneralGraph], w, engine: str = "elim") -> float:
    """t_H(w): the hom sum divided by the number of vertex maps."""
    w = as_weight(w)
    if isinstance(h, GeneralGraph):
        return hom_sum_symmetric(h, w, engine) / float(w.shape[0]) ** h.v_size
    return hom_sum(h, w, engine) / (float(w.shape[0]) ** h.x_size * float(w.shape[1]) ** h.y_size)


# ---------------------------------------------------------------------------
# tensor products

def tensor(w1, w2) -> np.ndarray:
    """[(x, x'), (y, y')] -> w1[x, y] * w2[x', y'], pairs flattened row-major."""
    return np.kron(as_weight(w1, "w1"), as_weight(w2, "w2"))


def tensor_power(w, k: int) -> np.ndarray:
    w = as_weight(w)
    if k < 1:
        raise ValueError("tensor power needs k >= 1")
    entries = (w.shape[0] * w.shape[1]) ** k
    if entries > TENSOR_ENTRY_LIMIT:
        raise GuardError(f"tensor power would have {entries} entries (limit {TENSOR_ENTRY_LIMIT})")
    out = w
    for _ in range(k - 1):
        out = np.kron(out, w)
    return out
