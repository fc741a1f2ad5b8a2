"""Reading and writing graphs as edge lists, Matrix Market files or dense CSV.

Edge lists are 0-indexed tab-separated pairs and may start with a
``# n=<count>`` line recording the node count. Matrix Market files follow
the standard 1-indexed coordinate layout. Dense CSV holds n rows of n
comma-separated 0/1 values.
"""

from __future__ import annotations

import logging
import os
import warnings
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .graphgen import Graph

log = logging.getLogger(__name__)


class GraphFormat(str, Enum):
    EDGE_LIST_TSV = "tsv"
    MATRIX_MARKET = "mtx"
    DENSE_CSV = "csv"


_SUFFIXES = {
    ".tsv": GraphFormat.EDGE_LIST_TSV,
    ".txt": GraphFormat.EDGE_LIST_TSV,
    ".edges": GraphFormat.EDGE_LIST_TSV,
    ".mtx": GraphFormat.MATRIX_MARKET,
    ".csv": GraphFormat.DENSE_CSV,
}


class GraphFormatError(ValueError):
    def __init__(self, path, lineno, message):
        self.path = str(path)
        self.lineno = lineno
        loc = f"{path}:{lineno}" if lineno else str(path)
        super().__init__(f"{loc}: {message}")


@dataclass(frozen=True)
class GraphFile:
    path: Path
    format: GraphFormat
    n: int | None = None


def infer_format(path) -> GraphFormat:
    suffix = Path(path).suffix.lower()
    try:
        return _SUFFIXES[suffix]
    except KeyError:
        raise ValueError(f"cannot infer graph format from suffix {suffix!r}; "
                         f"pass one of {[f.value for f in GraphFormat]}") from None


def _from_edges(path, n, edges) -> tuple[Graph, int]:
    a = np.zeros((n, n), dtype=np.uint8)
    loops = 0
    for lineno, u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(path, lineno, f"node id out of range for n={n}: ({u}, {v})")
        if u == v:
            loops += 1
            continue
        a[u, v] = a[v, u] = 1
    return Graph(a), loops


def _read_tsv(path, n):
    edges = []
    declared = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                key, _, value = text[1:].strip().partition("=")
                if key.strip() == "n" and value:
                    declared = int(value)
                continue
            parts = text.split()
            if len(parts) < 2:
                raise GraphFormatError(path, lineno, f"expected two node ids, got {text!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(path, lineno, f"non-integer node id in {text!r}") from None
            edges.append((lineno, u, v))
    if n is None:
        n = declared
    if n is None:
        n = 1 + max((max(u, v) for _, u, v in edges), default=-1)
    return _from_edges(path, n, edges)


def _read_mtx(path, n):
    with open(path) as fh:
        lines = fh.readlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise GraphFormatError(path, 1, "missing %%MatrixMarket banner")
    banner = lines[0].lower().split()
    if len(banner) < 5 or banner[1] != "matrix" or banner[2] != "coordinate":
        raise GraphFormatError(path, 1, "only 'matrix coordinate' files are supported")
    field, symmetry = banner[3], banner[4]
    if field not in ("pattern", "integer", "real"):
        raise GraphFormatError(path, 1, f"unsupported field type {field!r}")
    size = None
    edges = []
    for lineno, line in enumerate(lines[1:], 2):
        text = line.strip()
        if not text or text.startswith("%"):
            continue
        parts = text.split()
        if size is None:
            try:
                rows, cols, _nnz = (int(p) for p in parts[:3])
            except ValueError:
                raise GraphFormatError(path, lineno, f"bad size line {text!r}") from None
            if rows != cols:
                raise GraphFormatError(path, lineno, f"adjacency must be square, got {rows}x{cols}")
            size = rows
            continue
        want = 2 if field == "pattern" else 3
        if len(parts) < want:
            raise GraphFormatError(path, lineno, f"expected {want} columns, got {text!r}")
        try:
            u, v = int(parts[0]) - 1, int(parts[1]) - 1
            value = 1.0 if field == "pattern" else float(parts[2])
        except ValueError:
            raise GraphFormatError(path, lineno, f"malformed entry {text!r}") from None
        if value != 0:
            edges.append((lineno, u, v))
    if size is None:
        raise GraphFormatError(path, 0, "missing size line")
    if n is not None and n != size:
        raise GraphFormatError(path, 0, f"declared n={n} but file has {size} nodes")
    if symmetry not in ("symmetric", "general"):
        raise GraphFormatError(path, 1, f"unsupported symmetry {symmetry!r}")
    return _from_edges(path, size, edges)


def _read_csv(path, n):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                values = [int(float(v)) for v in text.split(",")]
            except ValueError:
                raise GraphFormatError(path, lineno, f"non-numeric entry in {text!r}") from None
            if rows and len(values) != len(rows[0][1]):
                raise GraphFormatError(path, lineno, "ragged row")
            if any(v not in (0, 1) for v in values):
                raise GraphFormatError(path, lineno, "entries must be 0 or 1")
            rows.append((lineno, values))
    a = np.array([v for _, v in rows], dtype=np.uint8).reshape(len(rows), -1)
    if a.shape[0] != a.shape[1]:
        raise GraphFormatError(path, 0, f"matrix is not square: {a.shape}")
    if n is not None and n != a.shape[0]:
        raise GraphFormatError(path, 0, f"declared n={n} but file has {a.shape[0]} rows")
    if not np.array_equal(a, a.T):
        i, j = np.argwhere(a != a.T)[0]
        raise GraphFormatError(path, rows[i][0], f"matrix is not symmetric at ({i}, {j})")
    loops = int(np.trace(a))
    np.fill_diagonal(a, 0)
    return Graph(a), loops


_READERS = {
    GraphFormat.EDGE_LIST_TSV: _read_tsv,
    GraphFormat.MATRIX_MARKET: _read_mtx,
    GraphFormat.DENSE_CSV: _read_csv,
}


def read_graph(path, format=None, n: int | None = None) -> tuple[Graph, int]:
    """Parse a graph file and return ``(graph, dropped_self_loops)``."""
    fmt = infer_format(path) if format is None else GraphFormat(format)
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    return _READERS[fmt](path, n)


def parse_graph(file, format=None, n: int | None = None) -> Graph:
    """Parse a graph file; self-loops are dropped with a warning.

    ``file`` may be a path or a :class:`GraphFile`.
    """
    if isinstance(file, GraphFile):
        file, format, n = file.path, file.format, file.n
    graph, loops = read_graph(file, format, n)
    if loops:
        msg = f"{file}: dropped {loops} self-loop(s)"
        log.warning(msg)
        warnings.warn(msg, stacklevel=2)
    return graph


def write_graph(graph: Graph, path, format=None) -> Path:
    path = Path(path)
    fmt = infer_format(path) if format is None else GraphFormat(format)
    a = graph.adjacency
    if fmt is GraphFormat.EDGE_LIST_TSV:
        iu, ju = np.nonzero(np.triu(a, 1))
        with open(path, "w") as fh:
            fh.write(f"# n={graph.n}\n")
            for u, v in zip(iu, ju):
                fh.write(f"{u}\t{v}\n")
    elif fmt is GraphFormat.MATRIX_MARKET:
        # symmetric storage keeps the lower triangle, row >= column
        il, jl = np.nonzero(np.tril(a, -1))
        with open(path, "w") as fh:
            fh.write("%%MatrixMarket matrix coordinate pattern symmetric\n")
            fh.write(f"{graph.n} {graph.n} {il.size}\n")
            for u, v in zip(il, jl):
                fh.write(f"{u + 1} {v + 1}\n")
    else:
        np.savetxt(path, a, fmt="%d", delimiter=",")
    return path
