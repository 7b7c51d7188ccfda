"""Bipartite multigraphs with a fixed bipartization, and the standard families.

Vertices are integer indices on each side.  An edge is an ordered pair
``(xi, yj)`` from the X side to the Y side; repeated pairs encode multiplicity.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from ._common import GuardError

MAX_ENUM_VERTICES = 24


@dataclass(frozen=True)
class BipartiteGraph:
    x_size: int
    y_size: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[tuple[str, ...], tuple[str, ...]]] = field(
        default=None, compare=False
    )

    def __post_init__(self):
        if self.x_size < 0 or self.y_size < 0:
            raise ValueError("side sizes must be nonnegative")
        edges = []
        for e in self.edges:
            xi, yj = (int(v) for v in e)
            if not (0 <= xi < self.x_size and 0 <= yj < self.y_size):
                raise ValueError(f"edge {(xi, yj)} out of range for sides "
                                 f"({self.x_size}, {self.y_size})")
            edges.append((xi, yj))
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        if self.labels is not None:
            lx, ly = (tuple(str(s) for s in side) for side in self.labels)
            if len(lx) != self.x_size or len(ly) != self.y_size:
                raise ValueError("label counts must match side sizes")
            object.__setattr__(self, "labels", (lx, ly))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return self.x_size + self.y_size

    def x_degrees(self) -> list[int]:
        deg = [0] * self.x_size
        for xi, _ in self.edges:
            deg[xi] += 1
        return deg

    def y_degrees(self) -> list[int]:
        deg = [0] * self.y_size
        for _, yj in self.edges:
            deg[yj] += 1
        return deg

    def multiplicities(self) -> Counter:
        return Counter(self.edges)

    def components(self) -> list[tuple[list[int], list[int]]]:
        """Connected components as (X indices, Y indices); isolated vertices included."""
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for xi, yj in self.edges:
            ra, rb = find(xi), find(self.x_size + yj)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, tuple[list[int], list[int]]] = {}
        for v in range(self.n):
            xs, ys = groups.setdefault(find(v), ([], []))
            if v < self.x_size:
                xs.append(v)
            else:
                ys.append(v - self.x_size)
        return [groups[r] for r in sorted(groups)]

    def to_dict(self) -> dict:
        out = {"x": self.x_size, "y": self.y_size,
               "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            out["labels"] = {"x": list(self.labels[0]), "y": list(self.labels[1])}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BipartiteGraph":
        labels = data.get("labels")
        if labels is not None:
            labels = (tuple(labels["x"]), tuple(labels["y"]))
        return cls(int(data["x"]), int(data["y"]),
                   tuple(tuple(e) for e in data["edges"]), labels)


@dataclass(frozen=True)
class GeneralGraph:
    """Undirected multigraph without self-loops (the symmetric setting)."""

    v_size: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.v_size and 0 <= v < self.v_size):
                raise ValueError(f"edge {(u, v)} out of range")
            edges.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def m(self) -> int:
        return len(self.edges)


def make_triangle() -> GeneralGraph:
    return GeneralGraph(3, ((0, 1), (1, 2), (0, 2)))


def make_complete_bipartite(m: int, n: int) -> BipartiteGraph:
    if m < 1 or n < 1:
        raise ValueError("K_{m,n} needs m, n >= 1")
    return BipartiteGraph(m, n, tuple(itertools.product(range(m), range(n))))


def make_even_cycle(k: int) -> BipartiteGraph:
    """The cycle of length 2k.

    X vertex i sits between Y vertices i and i+1 (mod k); for k = 1 this is
    the doubled edge.
    """
    if k < 1:
        raise ValueError("cycle half-length must be >= 1")
    edges = [(i, i) for i in range(k)] + [(i, (i + 1) % k) for i in range(k)]
    return BipartiteGraph(k, k, tuple(edges))


def make_hypercube(n: int) -> BipartiteGraph:
    if n < 1:
        raise ValueError("hypercube dimension must be >= 1")
    words = range(2 ** n)
    xs = [w for w in words if bin(w).count("1") % 2 == 0]
    ys = [w for w in words if bin(w).count("1") % 2 == 1]
    y_index = {w: j for j, w in enumerate(ys)}
    edges = [(i, y_index[w ^ (1 << b)]) for i, w in enumerate(xs) for b in range(n)]
    labels = (tuple(format(w, f"0{n}b") for w in xs),
              tuple(format(w, f"0{n}b") for w in ys))
    return BipartiteGraph(len(xs), len(ys), tuple(edges), labels)


def make_path(k: int) -> BipartiteGraph:
    """Path with k edges; its vertices alternate X, Y, X, ... starting in X."""
    if k < 1:
        raise ValueError("path length must be >= 1")
    edges = []
    for i in range(k):
        a, b = (i, i + 1) if i % 2 == 0 else (i + 1, i)
        edges.append((a // 2, b // 2))
    return BipartiteGraph(k // 2 + 1, (k + 1) // 2, tuple(edges))


def disjoint_union(*graphs: BipartiteGraph) -> BipartiteGraph:
    edges, dx, dy = [], 0, 0
    for g in graphs:
        edges.extend((xi + dx, yj + dy) for xi, yj in g.edges)
        dx += g.x_size
        dy += g.y_size
    return BipartiteGraph(dx, dy, tuple(edges))


def biproduct(g: BipartiteGraph, h: BipartiteGraph) -> BipartiteGraph:
    """Bi-product: vertex (x, x') -> x * h.x_size + x'; multiplicities multiply."""
    edges = [(a * h.x_size + c, b * h.y_size + d)
             for (a, b) in g.edges for (c, d) in h.edges]
    return BipartiteGraph(g.x_size * h.x_size, g.y_size * h.y_size, tuple(edges))


def edge_power(g: BipartiteGraph, k: int) -> BipartiteGraph:
    if k < 1:
        raise ValueError("edge multiplicity factor must be >= 1")
    return BipartiteGraph(g.x_size, g.y_size, g.edges * k, g.labels)


def induced_subgraph(g: BipartiteGraph, xs: Sequence[int], ys: Sequence[int]) -> BipartiteGraph:
    xs, ys = sorted(xs), sorted(ys)
    xmap = {v: i for i, v in enumerate(xs)}
    ymap = {v: i for i, v in enumerate(ys)}
    edges = [(xmap[a], ymap[b]) for a, b in g.edges if a in xmap and b in ymap]
    labels = None
    if g.labels is not None:
        labels = (tuple(g.labels[0][v] for v in xs), tuple(g.labels[1][v] for v in ys))
    return BipartiteGraph(len(xs), len(ys), tuple(edges), labels)


def induced_vertex_sets(g: BipartiteGraph) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every nonempty vertex subset, as (X indices, Y indices)."""
    if g.n > MAX_ENUM_VERTICES:
        raise GuardError(f"subset enumeration limited to {MAX_ENUM_VERTICES} vertices, got {g.n}")
    for mask in range(1, 2 ** g.n):
        xs = tuple(i for i in range(g.x_size) if mask >> i & 1)
        ys = tuple(j for j in range(g.y_size) if mask >> (g.x_size + j) & 1)
        yield xs, ys


def induced_subgraphs(g: BipartiteGraph) -> Iterator[BipartiteGraph]:
    for xs, ys in induced_vertex_sets(g):
        yield induced_subgraph(g, xs, ys)


def edge_ratio(g: BipartiteGraph) -> Optional[Fraction]:
    """|E| / (|V| - 1), or None for a single vertex."""
    if g.n < 2:
        return None
    return Fraction(g.m, g.n - 1)


def independence_number(g: BipartiteGraph) -> int:
    """Size of a largest independent set, by branch and bound on max-degree vertices."""
    if g.n > MAX_ENUM_VERTICES:
        raise GuardError(f"independence number limited to {MAX_ENUM_VERTICES} vertices")
    adj = [set() for _ in range(g.n)]
    for xi, yj in g.edges:
        adj[xi].add(g.x_size + yj)
        adj[g.x_size + yj].add(xi)

    def solve(alive: frozenset) -> int:
        if not alive:
            return 0
        v = max(sorted(alive), key=lambda a: len(adj[a] & alive))
        if not adj[v] & alive:
            # remaining vertices are pairwise nonadjacent
            return len(alive)
        without = solve(alive - {v})
        with_v = 1 + solve(alive - {v} - adj[v])
        return max(without, with_v)

    return solve(frozenset(range(g.n)))
