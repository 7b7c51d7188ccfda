"""Command-line front end.  Every subcommand prints one JSON report on stdout.

Exit codes: 0 on a completed computation (a found violation is a result, not
a failure), 2 on usage or input errors, 3 when a size guard refuses the job.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from ._common import GuardError, InputError, trial_rngs
from .banach import convexity_probe, key_probe, smoothness_probe
from .formats import (digest, dumps, read_decoration, read_graph, read_matrix, write_certificate,
                      write_decoration, write_graph)
from .graphs import (make_complete_bipartite, make_even_cycle, make_hypercube, make_path)
from .holder import (amplification_certificate, criterion_report, degree_witness,
                     density_witness, holder_gap, is_violation, search_violation,
                     verify_certificate)
from .homs import EdgeDecoration, hom_density, hom_sum, hom_sum_decorated
from .norms import norm_report, schatten_norm
from .sidorenko import (VertexDecoration, cube_claim_gap, even_path_chain, hypercube_chain,
                        sidorenko_gap)


def _gap_dict(gap) -> dict:
    return {"lhs": gap.lhs, "rhs": gap.rhs, "gap": gap.value}


def _array_digest(*arrays) -> str:
    h = hashlib.sha256()
    for a in arrays:
        h.update(np.ascontiguousarray(a, dtype=np.float64).tobytes())
    return h.hexdigest()


class _Run:
    def __init__(self, command: str, args: argparse.Namespace):
        self.command = command
        self.args = args
        self.inputs: dict[str, str] = {}
        self.start = time.perf_counter()

    def graph(self, path):
        self.inputs[str(path)] = digest(path)
        return read_graph(path)

    def matrix(self, path):
        self.inputs[str(path)] = digest(path)
        return read_matrix(path)

    def decoration(self, path):
        path = Path(path)
        for f in sorted(path.iterdir()):
            if f.is_file():
                self.inputs[str(f)] = digest(f)
        return read_decoration(path)

    def manifest(self) -> dict:
        return {"subcommand": self.command, "inputs": self.inputs,
                "seed": getattr(self.args, "seed", None),
                "engine": getattr(self.args, "engine", None),
                "version": __version__,
                "wall_clock": time.perf_counter() - self.start}


# ---------------------------------------------------------------------------
# subcommands; each returns the result payload

def cmd_construct(run, a):
    fam = a.family
    if fam == "complete":
        g = make_complete_bipartite(a.m, a.n)
    elif fam == "cycle":
        g = make_even_cycle(a.n)
    elif fam == "hypercube":
        g = make_hypercube(a.n)
    else:
        g = make_path(a.n)
    if a.graph_out:
        write_graph(g, a.graph_out)
    return g.to_dict()


def cmd_hom(run, a):
    if a.decoration:
        d = run.decoration(a.decoration)
        return {"kind": "decorated", "hom": hom_sum_decorated(d, a.engine, a.compensated)}
    g, w = run.graph(a.graph), run.matrix(a.matrix)
    if a.normalized:
        return {"kind": "density", "hom": hom_density(g, w, a.engine)}
    return {"kind": "plain", "hom": hom_sum(g, w, a.engine, a.compensated)}


def cmd_norm(run, a):
    g, w = run.graph(a.graph), run.matrix(a.matrix)
    if a.normalized:
        kind = "normalized-rectified"
    else:
        kind = "rectified" if a.rectified else "plain"
    return norm_report(g, w, kind, graph_id=Path(a.graph).stem, engine=a.engine).to_dict()


def cmd_schatten(run, a):
    w = run.matrix(a.matrix)
    return {"p": a.p, "value": schatten_norm(w, a.p)}


def cmd_holder(run, a):
    if a.action == "check-structure":
        return criterion_report(run.graph(a.graph)).to_dict()
    if a.action == "search":
        g = run.graph(a.graph)
        hit = search_violation(g, a.trials, a.dim, a.rectified, a.seed, a.refine, a.threads)
        if hit is None:
            return {"violation": False, "trials": a.trials}
        if a.out:
            write_decoration(hit.decoration, a.out)
        return {"violation": True, "trial": hit.trial, **_gap_dict(hit.gap),
                "decoration_digest": _array_digest(*hit.decoration.weights)}
    if a.action == "witness":
        g = run.graph(a.graph)
        if a.kind == "degree":
            wit = degree_witness(g, a.v, a.k)
        else:
            lam = np.ones(a.k) if a.lam is None else np.array([float(t) for t in a.lam.split(",")])
            xs = [int(t) for t in a.x.split(",")] if a.x else []
            ys = [int(t) for t in a.y.split(",")] if a.y else []
            wit = density_witness(g, xs, ys, lam)
        if a.out:
            write_decoration(wit.decoration, a.out)
        out = {"kind": a.kind, **_gap_dict(wit.gap), "violation": wit.violation}
        if wit.closed_lhs is not None:
            out.update(closed_lhs=wit.closed_lhs, closed_rhs=wit.closed_rhs)
        return out
    # amplify
    d = run.decoration(a.decoration)
    cert = amplification_certificate(d, rectified=a.rectified, engine=a.engine)
    check = verify_certificate(cert)
    if a.out:
        write_certificate(cert, a.out)
    return {**cert.to_dict(), "verified_margin": check.margin}


def cmd_sidorenko(run, a):
    g = run.graph(a.graph)
    if a.matrix:
        w = run.matrix(a.matrix)
        return {"trials": [{"digest": _array_digest(w), **_gap_dict(sidorenko_gap(g, w, a.engine))}]}
    rows = []
    for i, rng in enumerate(trial_rngs(a.seed, a.trials)):
        w = rng.random((a.dim, a.dim))
        rows.append({"trial": i, "digest": _array_digest(w), **_gap_dict(sidorenko_gap(g, w, a.engine))})
    return {"min_gap": min(r["gap"] for r in rows), "trials": rows}


def cmd_chain(run, a):
    w = run.matrix(a.matrix)
    if a.family == "hypercube":
        values = hypercube_chain(w, a.n_max, a.engine)
    else:
        values = even_path_chain(w, a.n_max, a.engine)
    return {"family": a.family, "values": values,
            "nondecreasing": all(b >= c - 1e-12 for c, b in zip(values, values[1:]))}


def cmd_cube_claim(run, a):
    from .homs import EdgeDecoration as _ED
    cube = make_hypercube(a.n)
    rows = []
    for i, rng in enumerate(trial_rngs(a.seed, a.trials)):
        ws = tuple(rng.random((a.dim, a.dim)) for _ in range(cube.m))
        vd = VertexDecoration(tuple(rng.random(a.dim) for _ in range(cube.x_size)),
                              tuple(rng.random(a.dim) for _ in range(cube.y_size)))
        gap = cube_claim_gap(a.n, vd, _ED(cube, ws), a.engine)
        rows.append({"trial": i, "digest": _array_digest(*ws, *vd.f, *vd.g), **_gap_dict(gap),
                     "relative": gap.relative})
    return {"n": a.n, "max_relative": max(r["relative"] for r in rows), "trials": rows}


def cmd_moduli(run, a):
    g = run.graph(a.graph)
    gid = Path(a.graph).stem
    if a.action == "convexity":
        return convexity_probe(g, a.epsilon, a.trials, a.dim, a.seed, a.signed, a.rectified,
                               gid).to_dict()
    if a.action == "smoothness":
        return smoothness_probe(g, a.epsilon, a.trials, a.dim, a.seed, a.signed, a.rectified,
                                gid).to_dict()
    gaps = key_probe(g, a.trials, a.dim, a.seed, a.signed, a.rectified)
    worst = max(gap.relative for gap in gaps)
    return {"graph": gid, "m": g.m, "samples": len(gaps), "max_relative_gap": worst,
            "violations": sum(gap.relative > 1e-9 for gap in gaps)}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphnorms", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, engine=True, seed=False, out=True):
        if engine:
            sp.add_argument("--engine", choices=["naive", "elim"], default="elim")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=100)
            sp.add_argument("--dim", type=int, default=3)
        if out:
            sp.add_argument("--out", help="write the report (or artifacts) here instead of stdout")
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("construct", help="build a standard bipartite graph")
    sp.add_argument("--family", choices=["complete", "cycle", "hypercube", "path"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=1, help="X side size for --family complete")
    sp.add_argument("--graph-out", help="also write the graph JSON to this file")
    common(sp, engine=False)

    sp = sub.add_parser("hom", help="homomorphism sum or density")
    sp.add_argument("--graph")
    sp.add_argument("--matrix")
    sp.add_argument("--decoration", help="decoration directory (decorated sum)")
    sp.add_argument("--normalized", action="store_true")
    sp.add_argument("--compensated", action="store_true")
    common(sp)

    sp = sub.add_parser("norm", help="graph norm report")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--rectified", action="store_true")
    sp.add_argument("--normalized", action="store_true")
    common(sp)

    sp = sub.add_parser("schatten", help="Schatten p-norm")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--p", type=float, required=True)
    common(sp, engine=False)

    sp = sub.add_parser("holder", help="Hölder checks, search, witnesses, amplification")
    hsub = sp.add_subparsers(dest="action", required=True)
    hp = hsub.add_parser("check-structure")
    hp.add_argument("--graph", required=True)
    common(hp, engine=False)
    hp = hsub.add_parser("search")
    hp.add_argument("--graph", required=True)
    hp.add_argument("--rectified", action="store_true")
    hp.add_argument("--refine", action="store_true")
    common(hp, engine=False, seed=True)
    hp = hsub.add_parser("witness")
    hp.add_argument("--graph", required=True)
    hp.add_argument("--kind", choices=["degree", "density"], required=True)
    hp.add_argument("--k", type=int, default=4)
    hp.add_argument("--v", type=int, default=0, help="Y-vertex for the degree witness")
    hp.add_argument("--x", help="comma-separated X vertices of the dense subgraph")
    hp.add_argument("--y", help="comma-separated Y vertices of the dense subgraph")
    hp.add_argument("--lam", help="comma-separated diagonal weights (default all ones, length k)")
    common(hp, engine=False)
    hp = hsub.add_parser("amplify")
    hp.add_argument("--decoration", required=True)
    hp.add_argument("--rectified", action="store_true")
    common(hp)

    sp = sub.add_parser("sidorenko", help="t_H(w) - t_K2(w)^m")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--matrix")
    common(sp, seed=True)

    sp = sub.add_parser("chain", help="normalised norm chains")
    sp.add_argument("--family", choices=["hypercube", "even-path"], required=True)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--n-max", type=int, default=3)
    common(sp)

    sp = sub.add_parser("cube-claim", help="decorated hypercube inequality on random data")
    sp.add_argument("--n", type=int, choices=[2, 3], required=True)
    common(sp, seed=True)

    sp = sub.add_parser("moduli", help="convexity / smoothness / key inequality probes")
    msub = sp.add_subparsers(dest="action", required=True)
    for name in ("convexity", "smoothness", "key"):
        mp = msub.add_parser(name)
        mp.add_argument("--graph", required=True)
        mp.add_argument("--epsilon", type=float, default=0.5)
        mp.add_argument("--signed", action="store_true")
        mp.add_argument("--rectified", action="store_true")
        common(mp, engine=False, seed=True)
    return p


COMMANDS = {"construct": cmd_construct, "hom": cmd_hom, "norm": cmd_norm,
            "schatten": cmd_schatten, "holder": cmd_holder, "sidorenko": cmd_sidorenko,
            "chain": cmd_chain, "cube-claim": cmd_cube_claim, "moduli": cmd_moduli}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    name = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    run = _Run(name, args)
    try:
        if args.command == "hom" and not args.decoration and not (args.graph and args.matrix):
            raise InputError("hom needs --graph and --matrix, or --decoration")
        result = COMMANDS[args.command](run, args)
    except GuardError as exc:
        print(f"graphnorms: refused: {exc}", file=sys.stderr)
        return 3
    except (InputError, ValueError) as exc:
        print(f"graphnorms: error: {exc}", file=sys.stderr)
        return 2
    report = {"manifest": run.manifest(), "result": result}
    text = dumps(report) + "\n"
    out = getattr(args, "out", None)
    if out and not (args.command == "holder" and args.action in ("search", "witness", "amplify")):
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
