"""Hölder and weak-Hölder inequalities: structural checks, witnesses, search, amplification.

An edge decoration ``{w_e}`` violates the (weak) Hölder inequality when the
decorated sum exceeds the product of the per-edge graph norms (rectified norms
in the weak case).  A violation is turned into an explicit failure of the
triangle inequality by tensor-power amplification; see
:func:`amplification_certificate`.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._common import Gap, GuardError, trial_rngs
from .graphs import (BipartiteGraph, edge_ratio, induced_subgraph, induced_vertex_sets,
                     independence_number)
from .homs import EdgeDecoration, as_weight, hom_sum_decorated, weighted_sum
from .norms import graph_norm, graph_rnorm

VIOLATION_RTOL = 1e-6
EXPANSION_LIMIT = 10 ** 7


# ---------------------------------------------------------------------------
# structural necessary conditions

@dataclass
class DensityWitness:
    x_vertices: tuple[int, ...]
    y_vertices: tuple[int, ...]
    subgraph: BipartiteGraph
    ratio: Fraction
    whole_ratio: Fraction


@dataclass
class DegreeWitness:
    side: str
    u: int
    v: int
    deg_u: int
    deg_v: int


@dataclass
class CriterionReport:
    density_pass: Optional[bool] = None
    density_witness: Optional[DensityWitness] = None
    degree_pass: Optional[bool] = None
    degree_witness: Optional[DegreeWitness] = None
    independence_number: Optional[int] = None

    def to_dict(self) -> dict:
        out: dict = {"density_pass": self.density_pass, "degree_pass": self.degree_pass,
                     "independence_number": self.independence_number}
        dw = self.density_witness
        out["density_witness"] = None if dw is None else {
            "x": list(dw.x_vertices), "y": list(dw.y_vertices),
            "edges": dw.subgraph.m, "vertices": dw.subgraph.n,
            "ratio": str(dw.ratio), "whole_ratio": str(dw.whole_ratio)}
        gw = self.degree_witness
        out["degree_witness"] = None if gw is None else {
            "side": gw.side, "u": gw.u, "v": gw.v, "deg_u": gw.deg_u, "deg_v": gw.deg_v}
        return out


def check_same_side_degrees(g: BipartiteGraph) -> CriterionReport:
    for side, degs in (("X", g.x_degrees()), ("Y", g.y_degrees())):
        for v in range(1, len(degs)):
            if degs[v] != degs[0]:
                return CriterionReport(degree_pass=False,
                                       degree_witness=DegreeWitness(side, 0, v, degs[0], degs[v]))
    return CriterionReport(degree_pass=True)


def check_subgraph_density(g: BipartiteGraph) -> CriterionReport:
    """Compare |E'|/(|V'|-1) of every induced subgraph against the whole graph.

    The maximum over all subgraphs is attained on an induced one (adding the
    induced edges only raises the ratio), so induced subsets suffice.
    """
    whole = edge_ratio(g)
    if whole is None:
        return CriterionReport(density_pass=True)
    best = None
    for xs, ys in induced_vertex_sets(g):
        if len(xs) + len(ys) < 2:
            continue
        sub = induced_subgraph(g, xs, ys)
        r = edge_ratio(sub)
        if best is None or r > best.ratio:
            best = DensityWitness(xs, ys, sub, r, whole)
    if best is not None and best.ratio > whole:
        return CriterionReport(density_pass=False, density_witness=best)
    return CriterionReport(density_pass=True)


def criterion_report(g: BipartiteGraph) -> CriterionReport:
    dens = check_subgraph_density(g)
    deg = check_same_side_degrees(g)
    return CriterionReport(dens.density_pass, dens.density_witness,
                           deg.degree_pass, deg.degree_witness, independence_number(g))


# ---------------------------------------------------------------------------
# inequality evaluation

def edge_norm(h: BipartiteGraph, w, rectified: bool) -> float:
    return graph_rnorm(h, w) if rectified else graph_norm(h, w)


def holder_gap(d: EdgeDecoration, rectified: bool = False, engine: str = "elim") -> Gap:
    """Decorated sum against the product of per-edge norms; positive value = violation."""
    rhs = math.prod(edge_norm(d.graph, w, rectified) for w in d.weights)
    return Gap(hom_sum_decorated(d, engine), rhs)


def is_violation(gap: Gap) -> bool:
    return gap.value > VIOLATION_RTOL * abs(gap.rhs)


@dataclass
class Witness:
    decoration: EdgeDecoration
    gap: Gap
    closed_lhs: Optional[float] = None
    closed_rhs: Optional[float] = None

    @property
    def violation(self) -> bool:
        return is_violation(self.gap)


def degree_witness(g: BipartiteGraph, v: int, k: int) -> Witness:
    """Decoration built around the Y-vertex ``v`` on k x k matrices.

    Edges at ``v`` carry the single-entry matrix (1 at the first row and
    column); all others carry the matrix that is 1 on the first row and first
    column.  Compared against rectified norms.
    """
    if not 0 <= v < g.y_size:
        raise ValueError(f"vertex {v} is not a Y-vertex of a graph with {g.y_size} Y-vertices")
    if k < 2:
        raise ValueError("witness needs k >= 2")
    cross = np.zeros((k, k))
    cross[0, :] = 1.0
    cross[:, 0] = 1.0
    corner = np.zeros((k, k))
    corner[0, 0] = 1.0
    ws = tuple(corner if yj == v else cross for _, yj in g.edges)
    d = EdgeDecoration(g, ws)
    return Witness(d, holder_gap(d, rectified=True))


def _diag_sum(g: BipartiteGraph, lam: np.ndarray) -> float:
    """h_G(diag(lam)) from the component structure."""
    out = 1.0
    for xs, ys in g.components():
        m_c = sum(1 for a, _ in g.edges if a in xs)
        out *= float(np.sum(lam ** m_c)) if m_c else float(len(lam))
    return out


def density_witness(g: BipartiteGraph, xs: Sequence[int], ys: Sequence[int], lam) -> Witness:
    """Diagonal matrix diag(lam) on the edges induced by (xs, ys), all-ones elsewhere.

    Both sides are evaluated by the engine; closed forms from the component
    structure are attached for cross-checking.
    """
    lam = np.asarray(lam, dtype=np.float64)
    if lam.ndim != 1 or lam.size < 1 or np.any(lam < 0):
        raise ValueError("lambda must be a nonempty nonnegative vector")
    xs, ys = set(xs), set(ys)
    if not xs <= set(range(g.x_size)) or not ys <= set(range(g.y_size)) or not xs | ys:
        raise ValueError("invalid induced vertex set")
    k = lam.size
    diag, ones = np.diag(lam), np.ones((k, k))
    ws = tuple(diag if (a in xs and b in ys) else ones for a, b in g.edges)
    d = EdgeDecoration(g, ws)
    gap = holder_gap(d, rectified=True)

    sub = induced_subgraph(g, sorted(xs), sorted(ys))
    m, n, m_sub, n_sub = g.m, g.n, sub.m, sub.n
    closed_lhs = float(k) ** (n - n_sub) * _diag_sum(sub, lam)
    closed_rhs = float(k) ** (n * (m - m_sub) / m) * _diag_sum(g, lam) ** (m_sub / m)
    return Witness(d, gap, closed_lhs, closed_rhs)


# ---------------------------------------------------------------------------
# randomised search

@dataclass
class SearchHit:
    trial: int
    decoration: EdgeDecoration
    gap: Gap


def _sample(rng: np.random.Generator, m: int, dim: int, rectified: bool) -> list[np.ndarray]:
    lo = 0.0 if rectified else -1.0
    return [rng.uniform(lo, 1.0, size=(dim, dim)) for _ in range(m)]


def hill_climb(h: BipartiteGraph, ws: list[np.ndarray], rectified: bool,
               passes: int = 100, step: float = 0.1, decay: float = 0.9) -> list[np.ndarray]:
    """Coordinate ascent on lhs / prod(norms); stops early at a violation.  Heuristic."""
    lo = 0.0 if rectified else -1.0
    ws = [w.copy() for w in ws]
    norms = [edge_norm(h, w, rectified) for w in ws]
    lhs = weighted_sum(h, ws)

    def ratio(lhs_, norms_):
        p = math.prod(norms_)
        return lhs_ / p if p > 0 else -math.inf

    best = ratio(lhs, norms)
    for _ in range(passes):
        for e, w in enumerate(ws):
            for idx in np.ndindex(*w.shape):
                for delta in (step, -step):
                    old = w[idx]
                    w[idx] = min(1.0, max(lo, old + delta))
                    if w[idx] == old:
                        continue
                    trial_norms = norms.copy()
                    trial_norms[e] = edge_norm(h, w, rectified)
                    trial_lhs = weighted_sum(h, ws)
                    r = ratio(trial_lhs, trial_norms)
                    if r > best:
                        best, lhs, norms = r, trial_lhs, trial_norms
                        break
                    w[idx] = old
        if best > 1.0 + VIOLATION_RTOL:
            break
        step *= decay
    return ws


def search_violation(h: BipartiteGraph, trials: int, dim: int, rectified: bool = False,
                     seed: int = 0, refine: bool = False, threads: int = 1) -> Optional[SearchHit]:
    """Random decorations (uniform on [0,1] or [-1,1]); the first violating trial wins.

    Trial ``i`` draws from its own stream, so the reported hit (the smallest
    violating trial index) does not depend on ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rngs = trial_rngs(seed, trials)

    def run(i: int) -> Optional[SearchHit]:
        ws = _sample(rngs[i], h.m, dim, rectified)
        d = EdgeDecoration(h, tuple(ws))
        gap = holder_gap(d, rectified)
        if not is_violation(gap) and refine:
            d = EdgeDecoration(h, tuple(hill_climb(h, ws, rectified)))
            gap = holder_gap(d, rectified)
        return SearchHit(i, d, gap) if is_violation(gap) else None

    if threads <= 1:
        for i in range(trials):
            hit = run(i)
            if hit is not None:
                return hit
        return None
    batch = 4 * threads
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, trials, batch):
            for hit in pool.map(run, range(start, min(start + batch, trials))):
                if hit is not None:
                    return hit
    return None


# ---------------------------------------------------------------------------
# amplification

@dataclass
class ViolationCertificate:
    """A normalised violating decoration and the triangle-inequality failure it forces.

    ``lhs`` is the sum of the norms of the 2n-th tensor powers of the edge
    matrices; ``rhs`` is the norm of their sum, obtained from the expansion
    over all maps f: E -> E without materialising any tensor power.
    """

    decoration: EdgeDecoration
    rectified: bool
    c: float
    n: int
    lhs: float
    rhs: float
    log_rhs_m: float = field(repr=False, default=math.nan)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {"rectified": self.rectified, "m": self.decoration.graph.m, "c": self.c,
                "n": self.n, "power": 2 * self.n, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin}


def smallest_level(c: float, m: int) -> int:
    """Smallest n >= 1 with m < c^(2n/m)."""
    if c <= 1.0:
        raise ValueError(f"amplification needs c > 1, got {c}")
    n = max(1, int(math.floor(m * math.log(m) / (2.0 * math.log(c)))) + 1)
    while not m < c ** (2.0 * n / m):
        n += 1
    while n > 1 and m < c ** (2.0 * (n - 1) / m):
        n -= 1
    return n


def expansion_log_sum(d: EdgeDecoration, power: int, engine: str = "elim",
                      compensated: bool = False) -> float:
    """log of sum over f: E -> E of |decorated sum with weights w_{f(e)}|^power."""
    m = d.graph.m
    logs = []
    for f in itertools.product(range(m), repeat=m):
        s = weighted_sum(d.graph, [d.weights[i] for i in f], engine=engine,
                         compensated=compensated)
        logs.append(power * math.log(abs(s)) if s != 0.0 else -math.inf)
    top = max(logs)
    if top == -math.inf:
        return -math.inf
    return top + math.log(math.fsum(math.exp(v - top) for v in logs))


def amplification_certificate(d: EdgeDecoration, rectified: bool = True,
                              engine: str = "elim") -> ViolationCertificate:
    m = d.graph.m
    if m ** m > EXPANSION_LIMIT:
        raise GuardError(f"f-expansion needs m^m = {m ** m} decorated sums (limit {EXPANSION_LIMIT})")
    gap = holder_gap(d, rectified, engine)
    if not gap.value > 0:
        raise ValueError("decoration does not violate the inequality (c <= 1)")
    base = d.absolute() if rectified else d
    norms = [edge_norm(d.graph, w, rectified) for w in base.weights]
    if min(norms) == 0.0:
        raise ValueError("cannot normalise an edge matrix of norm zero")
    unit = EdgeDecoration(d.graph, tuple(w / nrm for w, nrm in zip(base.weights, norms)))
    c = hom_sum_decorated(unit, engine)
    n = smallest_level(c, m)
    return _certify(unit, rectified, c, n, engine)


def _certify(unit: EdgeDecoration, rectified: bool, c: float, n: int, engine: str,
             compensated: bool = False) -> ViolationCertificate:
    m = unit.graph.m
    lhs = math.fsum(edge_norm(unit.graph, w, rectified) ** (2 * n) for w in unit.weights)
    log_rhs_m = expansion_log_sum(unit, 2 * n, engine, compensated)
    return ViolationCertificate(unit, rectified, c, n, lhs, math.exp(log_rhs_m / m), log_rhs_m)


def verify_certificate(cert: ViolationCertificate) -> ViolationCertificate:
    """Recompute every number from the stored decoration with compensated summation."""
    d = cert.decoration
    try:
        c = hom_sum_decorated(d, "naive", compensated=True)
        engine = "naive"
    except GuardError:
        c = hom_sum_decorated(d, "elim")
        engine = "elim"
    return _certify(d, cert.rectified, c, cert.n, engine, compensated=(engine == "naive"))


def odd_degree_nullity(h: BipartiteGraph) -> float:
    """The plain norm of [[1, -1], [-1, 1]]; zero whenever H has a vertex of odd degree."""
    return graph_norm(h, as_weight([[1.0, -1.0], [-1.0, 1.0]]))
