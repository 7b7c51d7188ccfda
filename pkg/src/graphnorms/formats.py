"""On-disk formats: graph JSON, matrix CSV/JSON, decoration and certificate directories.

Numbers are written with 17 significant digits so that every float survives a
write/read round trip bit for bit.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import re
from pathlib import Path

import numpy as np

from ._common import InputError
from .graphs import BipartiteGraph
from .holder import ViolationCertificate
from .homs import EdgeDecoration

_FLOAT_MARK = "\x00"


def _mark_floats(obj):
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return None if obj is None else bool(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return None if not math.isfinite(x) else f"{_FLOAT_MARK}{x:.17g}{_FLOAT_MARK}"
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _mark_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_mark_floats(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _mark_floats(obj.tolist())
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    """Deterministic JSON with floats as 17-significant-digit literals."""
    text = json.dumps(_mark_floats(obj), indent=indent, sort_keys=False)
    return re.sub(r'"\\u0000([^"\\]*)\\u0000"', r"\1", text)


def digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def _load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def read_graph(path) -> BipartiteGraph:
    data = _load_json(path)
    try:
        return BipartiteGraph.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: invalid graph: {exc}") from exc


def write_graph(g: BipartiteGraph, path) -> None:
    Path(path).write_text(dumps(g.to_dict()) + "\n")


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() == ".json":
        rows = _load_json(path)
        where = "row"
    else:
        try:
            with open(path, newline="") as fh:
                raw = list(csv.reader(fh))
        except OSError as exc:
            raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
        rows = []
        for lineno, line in enumerate(raw, start=1):
            if not line or all(not c.strip() for c in line):
                continue
            row = []
            for col, cell in enumerate(line, start=1):
                try:
                    row.append(float(cell))
                except ValueError:
                    raise InputError(f"{path}:{lineno}:{col}: not a number: {cell!r}") from None
            rows.append(row)
        where = "line"
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{path}: expected a nonempty list of rows")
    width = len(rows[0])
    for i, r in enumerate(rows, start=1):
        if len(r) != width:
            raise InputError(f"{path}: {where} {i} has {len(r)} entries, expected {width}")
    try:
        arr = np.array(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: non-numeric entry ({exc})") from exc
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise InputError(f"{path}: expected a nonempty 2-D matrix")
    if not np.all(np.isfinite(arr)):
        r, c = np.argwhere(~np.isfinite(arr))[0]
        raise InputError(f"{path}: {where} {r + 1}, column {c + 1}: non-finite entry")
    return arr


def format_matrix_csv(w) -> str:
    return "".join(",".join(f"{float(x):.17g}" for x in row) + "\n" for row in np.asarray(w))


def write_matrix(w, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(dumps(np.asarray(w).tolist(), indent=None) + "\n")
    else:
        path.write_text(format_matrix_csv(w))


def write_decoration(d: EdgeDecoration, directory, graph_name: str = "graph.json") -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_graph(d.graph, directory / graph_name)
    names = [f"e{i:04d}.csv" for i in range(d.graph.m)]
    for name, w in zip(names, d.weights):
        write_matrix(w, directory / name)
    manifest = {"graph": graph_name, "matrices": names}
    (directory / "manifest.json").write_text(dumps(manifest) + "\n")
    return directory


def read_decoration(directory) -> EdgeDecoration:
    directory = Path(directory)
    manifest = _load_json(directory / "manifest.json")
    try:
        graph = read_graph(directory / manifest["graph"])
        names = manifest.get("matrices") or [f"e{i:04d}.csv" for i in range(graph.m)]
    except (KeyError, TypeError) as exc:
        raise InputError(f"{directory / 'manifest.json'}: missing field {exc}") from exc
    weights = tuple(read_matrix(directory / name) for name in names)
    try:
        return EdgeDecoration(graph, weights)
    except ValueError as exc:
        raise InputError(f"{directory}: invalid decoration: {exc}") from exc


def write_certificate(cert: ViolationCertificate, directory) -> Path:
    directory = write_decoration(cert.decoration, directory)
    (directory / "certificate.json").write_text(dumps(cert.to_dict()) + "\n")
    return directory


def read_certificate(directory) -> ViolationCertificate:
    directory = Path(directory)
    d = read_decoration(directory)
    data = _load_json(directory / "certificate.json")
    return ViolationCertificate(d, bool(data["rectified"]), float(data["c"]), int(data["n"]),
                                float(data["lhs"]), float(data["rhs"]))
