"""Graph norms, their rectified and normalised variants, and Schatten norms."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ._common import Gap
from .graphs import BipartiteGraph, make_even_cycle
from .homs import as_weight, hom_density, hom_sum
from .linalg import singular_values

NORM_KINDS = ("plain", "rectified", "normalized-rectified")


def _root(h: float, m: int) -> float:
    if m < 1:
        raise ValueError("graph norms need at least one edge")
    h = abs(h)
    return 0.0 if h == 0.0 else h ** (1.0 / m)


def graph_norm(h: BipartiteGraph, w, engine: str = "elim") -> float:
    """|h_H(w)|^(1/m)."""
    return _root(hom_sum(h, w, engine), h.m)


def graph_rnorm(h: BipartiteGraph, w, engine: str = "elim") -> float:
    """h_H(|w|)^(1/m)."""
    return _root(hom_sum(h, np.abs(as_weight(w)), engine), h.m)


def normalized_rnorm(h: BipartiteGraph, w, engine: str = "elim") -> float:
    """t_H(|w|)^(1/m): the rectified norm under uniform probability measures."""
    return _root(hom_density(h, np.abs(as_weight(w)), engine), h.m)


@dataclass
class NormReport:
    graph: str
    kind: str
    m: int
    hom: float
    value: float

    def to_dict(self) -> dict:
        return asdict(self)


def norm_report(h: BipartiteGraph, w, kind: str = "plain", graph_id: str = "H",
                engine: str = "elim") -> NormReport:
    w = as_weight(w)
    if kind == "plain":
        hom = hom_sum(h, w, engine)
    elif kind == "rectified":
        hom = hom_sum(h, np.abs(w), engine)
    elif kind == "normalized-rectified":
        hom = hom_density(h, np.abs(w), engine)
    else:
        raise ValueError(f"unknown norm kind {kind!r}")
    return NormReport(graph_id, kind, h.m, hom, _root(hom, h.m))


def schatten_norm(w, p: float) -> float:
    """(sum of sigma_i^p)^(1/p); p may be fractional, p >= 1."""
    if p < 1:
        raise ValueError("Schatten norms need p >= 1")
    s = singular_values(as_weight(w))
    top = s.max(initial=0.0)
    if top == 0.0:
        return 0.0
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def cycle_schatten_gap(n: int, w) -> Gap:
    """Cycle norm of length 2n against the 2n-th Schatten norm (an identity)."""
    return Gap(graph_norm(make_even_cycle(n), w), schatten_norm(w, 2 * n))


def trace_holder_gap(v, w, p: float, q: float) -> Gap:
    """|v w|_{S_r} against |v|_{S_p} |w|_{S_q} where 1/r = 1/p + 1/q."""
    v, w = as_weight(v, "v"), as_weight(w, "w")
    if v.shape[1] != w.shape[0]:
        raise ValueError(f"inner dimensions differ: {v.shape} and {w.shape}")
    r = 1.0 / (1.0 / p + 1.0 / q)
    if p < 1 or q < 1 or r < 1:
        raise ValueError("need p, q >= 1 with 1/p + 1/q <= 1")
    return Gap(schatten_norm(v @ w, r), schatten_norm(v, p) * schatten_norm(w, q))
