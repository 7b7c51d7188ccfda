"""Per-sample checks of the convexity and smoothness inequalities for graph norms.

The probes sample pairs of matrices and test the explicit inequalities that
bound the moduli of a Hölder graph's norm by those of l_m.  They are one-sided
falsification checks, not estimators of the moduli themselves.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from ._common import Gap, trial_rngs
from .graphs import BipartiteGraph
from .homs import as_weight
from .norms import graph_norm, graph_rnorm

TOL = 1e-9


def _norm(h: BipartiteGraph, w, rectified: bool) -> float:
    return graph_rnorm(h, w) if rectified else graph_norm(h, w)


def key_inequality_gap(h: BipartiteGraph, w1, w2, rectified: bool = False) -> Gap:
    """|w1+w2|^m + |w1-w2|^m against (|w1|+|w2|)^m + ||w1|-|w2||^m."""
    w1, w2 = as_weight(w1, "w1"), as_weight(w2, "w2")
    if w1.shape != w2.shape:
        raise ValueError(f"shape mismatch: {w1.shape} vs {w2.shape}")
    m = h.m
    a, b = _norm(h, w1, rectified), _norm(h, w2, rectified)
    lhs = _norm(h, w1 + w2, rectified) ** m + _norm(h, w1 - w2, rectified) ** m
    return Gap(lhs, (a + b) ** m + abs(a - b) ** m)


def two_point_gap(x: float, y: float, p: float) -> Gap:
    """(x+y)^p + (x-y)^p against 2^(p-1) (x^p + y^p), for x >= y >= 0."""
    return Gap((x + y) ** p + (x - y) ** p, 2.0 ** (p - 1) * (x ** p + y ** p))


def _kp_objective(y, p: float):
    # expm1/log1p keep the O(y^2) numerator accurate for small y
    with np.errstate(divide="ignore"):
        num = np.expm1(p * np.log1p(y)) + np.expm1(p * np.log1p(-y))
    return num / (y * y)


def derive_Kp(p: float, grid: int = 20_000) -> float:
    """max over y in (0, 1] of ((1+y)^p + (1-y)^p - 2) / y^2.

    The y -> 0 limit p(p-1) is included; the best grid point is refined by a
    bounded scalar search.
    """
    if p < 2:
        raise ValueError("K_p is defined for p >= 2")
    ys = np.linspace(1.0 / grid, 1.0, grid)
    vals = _kp_objective(ys, p)
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo, hi = ys[max(i - 1, 0)], ys[min(i + 1, grid - 1)]
    if hi > lo:
        res = minimize_scalar(lambda y: -float(_kp_objective(y, p)), bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return max(best, p * (p - 1.0))


def Kp_closed_form(p: int) -> float:
    """For integer p >= 2 every expansion coefficient is positive, so the max sits at y = 1."""
    return sum(2.0 * math.comb(p, k) for k in range(2, p + 1, 2))


@dataclass
class ModuliReport:
    graph: str
    m: int
    epsilon: float
    samples: int
    kind: str
    admissible: int = 0
    violations: int = 0
    convexity_infimum: Optional[float] = None
    convexity_bound: Optional[float] = None
    smoothness_supremum: Optional[float] = None
    smoothness_bound: Optional[float] = None
    K_m: Optional[float] = None
    label: str = "per-sample bound checks"
    checks: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("checks")
        return out


def convexity_bound(epsilon: float, m: int) -> float:
    return 1.0 - (1.0 - (epsilon / 2.0) ** m) ** (1.0 / m)


def _sample_pair(rng: np.random.Generator, dim: int, signed: bool):
    # random exponents spread the samples from flat to spiky matrices
    out = []
    for _ in range(2):
        w = rng.random((dim, dim)) ** rng.uniform(1.0, 8.0)
        if signed:
            w = w * rng.choice([-1.0, 1.0], size=(dim, dim))
        out.append(w)
    return out


def convexity_probe(h: BipartiteGraph, epsilon: float, trials: int, dim: int, seed: int = 0,
                    signed: bool = False, rectified: bool = False,
                    graph_id: str = "H") -> ModuliReport:
    """Unit-norm pairs with |x - y| >= epsilon must satisfy 1 - |(x+y)/2| >= bound."""
    if not 0 < epsilon <= 2:
        raise ValueError("epsilon must lie in (0, 2]")
    m = h.m
    bound = convexity_bound(epsilon, m)
    report = ModuliReport(graph_id, m, epsilon, trials, "convexity", convexity_bound=bound)
    for rng in trial_rngs(seed, trials):
        x, y = _sample_pair(rng, dim, signed)
        nx, ny = _norm(h, x, rectified), _norm(h, y, rectified)
        if nx == 0 or ny == 0:
            continue
        x, y = x / nx, y / ny
        if _norm(h, x - y, rectified) < epsilon:
            continue
        report.admissible += 1
        defect = 1.0 - _norm(h, (x + y) / 2.0, rectified)
        ok = defect >= bound - TOL
        report.checks.append((defect, ok))
        report.violations += not ok
        if report.convexity_infimum is None or defect < report.convexity_infimum:
            report.convexity_infimum = defect
    return report


def smoothness_probe(h: BipartiteGraph, epsilon: float, trials: int, dim: int, seed: int = 0,
                     signed: bool = False, rectified: bool = False,
                     graph_id: str = "H") -> ModuliReport:
    """|x| = 1, |y| = epsilon must satisfy |x+y| + |x-y| - 2 <= K_m epsilon^2 / m."""
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    m = h.m
    k_m = derive_Kp(m) if m >= 2 else 0.0
    bound = k_m * epsilon ** 2 / m
    report = ModuliReport(graph_id, m, epsilon, trials, "smoothness",
                          smoothness_bound=bound, K_m=k_m)
    for rng in trial_rngs(seed, trials):
        x, y = _sample_pair(rng, dim, signed)
        nx, ny = _norm(h, x, rectified), _norm(h, y, rectified)
        if nx == 0 or ny == 0:
            continue
        x, y = x / nx, epsilon * y / ny
        report.admissible += 1
        excess = _norm(h, x + y, rectified) + _norm(h, x - y, rectified) - 2.0
        ok = excess <= bound + TOL
        report.checks.append((excess, ok))
        report.violations += not ok
        half = excess / 2.0
        if report.smoothness_supremum is None or half > report.smoothness_supremum:
            report.smoothness_supremum = half
    return report


def key_probe(h: BipartiteGraph, trials: int, dim: int, seed: int = 0, signed: bool = False,
              rectified: bool = False) -> list[Gap]:
    out = []
    for rng in trial_rngs(seed, trials):
        w1, w2 = _sample_pair(rng, dim, signed)
        out.append(key_inequality_gap(h, w1, w2, rectified))
    return out
