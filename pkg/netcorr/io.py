"""File formats: edge lists, matrix CSV, signal CSV, embedding CSV.

Layouts::

    edge list     see ``netcorr.graph`` (UTF-8, '#' comments)
    matrix CSV    node,<label_1>,...,<label_n>   then one row per node
    signal CSV    node,value
    embedding CSV node,c1,...,cd

Floats are written with 17 significant digits so a written matrix reads
back bit-for-bit. Every loader that takes a ``graph`` reorders rows into
the graph's node order and rejects missing or extra labels.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from netcorr.correlation import Signal
from netcorr.graph import Graph, parse_edge_list
from netcorr.metrics import Embedding, relabel
from netcorr.weights import WeightMatrix, external_weight

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]

FLOAT_FORMAT = "%.17g"
NODE_COLUMN = "node"


class FormatError(ValueError):
    """A CSV that does not follow the expected layout or label set."""


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _read_csv(path: PathLike, what: str) -> pd.DataFrame:
    try:
        # Labels such as "NA" or "null" are legal node names; blanks are handled in _numeric.
        df = pd.read_csv(
            path,
            dtype={NODE_COLUMN: str},
            keep_default_na=False,
            na_values=[],
            skipinitialspace=True,
            float_precision="round_trip",
        )
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise FormatError(f"{what} {path}: {e}") from e
    if df.columns.empty or df.columns[0] != NODE_COLUMN:
        raise FormatError(f"{what} {path}: first column must be {NODE_COLUMN!r}")
    df[NODE_COLUMN] = df[NODE_COLUMN].astype(str).str.strip()
    if df[NODE_COLUMN].duplicated().any():
        dupes = sorted(df.loc[df[NODE_COLUMN].duplicated(), NODE_COLUMN].unique())
        raise FormatError(f"{what} {path}: duplicate node labels {dupes}")
    return df.set_index(NODE_COLUMN)


def _numeric(df: pd.DataFrame, what: str) -> np.ndarray:
    df = df.mask(df.astype(str).map(str.strip) == "")
    try:
        values = df.to_numpy(dtype=float)
    except ValueError as e:
        raise FormatError(f"{what}: non-numeric entry ({e})") from e
    if not np.all(np.isfinite(values)):
        raise FormatError(f"{what}: missing or non-finite entries")
    return values


def _align(labels: Sequence[str], graph: Graph, what: str) -> List[str]:
    """Check ``labels`` is a permutation of the graph's nodes; return graph order."""
    have, want = set(labels), set(graph.nodes)
    if have != want:
        raise FormatError(
            f"{what} nodes do not match the graph "
            f"(missing {sorted(want - have)}, extra {sorted(have - want)})"
        )
    return list(graph.nodes)


def _emit(df: pd.DataFrame, path: Optional[PathLike]) -> str:
    """Write ``df`` to ``path`` (if given) and return the CSV text."""
    text = df.to_csv(float_format=FLOAT_FORMAT, lineterminator="\n")
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path} ({len(df)} rows)")
    return text


# ---------------------------------------------------------------------------
# Edge lists
# ---------------------------------------------------------------------------


def load_edge_list(path: PathLike, directed_forbidden: bool = True) -> Graph:
    """Read and parse an edge-list file."""
    text = Path(path).read_text(encoding="utf-8")
    g = parse_edge_list(text, directed_forbidden=directed_forbidden)
    logger.info(f"Loaded graph {path}: {g.n} nodes, {g.m} edges")
    return g


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def matrix_to_csv(values: np.ndarray, nodes: Sequence[str], path: Optional[PathLike] = None) -> str:
    """Matrix CSV with a header of node labels; returns the text."""
    df = pd.DataFrame(np.asarray(values), index=pd.Index(list(nodes), name=NODE_COLUMN), columns=list(nodes))
    return _emit(df, path)


def read_matrix_csv(path: PathLike) -> Tuple[np.ndarray, List[str]]:
    """Read a matrix CSV; returns (values, labels). Header and row labels must agree."""
    df = _read_csv(path, "matrix CSV")
    rows = list(df.index)
    cols = [str(c).strip() for c in df.columns]
    if rows != cols:
        raise FormatError(f"matrix CSV {path}: header labels {cols} differ from row labels {rows}")
    return _numeric(df, f"matrix CSV {path}"), rows


def load_weight_csv(path: PathLike, graph: Optional[Graph] = None) -> WeightMatrix:
    """External weight matrix, reordered into ``graph`` order when given."""
    values, labels = read_matrix_csv(path)
    if graph is not None:
        order = _align(labels, graph, "weight CSV")
        pos = {v: i for i, v in enumerate(labels)}
        idx = [pos[v] for v in order]
        values, labels = values[np.ix_(idx, idx)], order
    return external_weight(values, labels)


def weight_to_csv(w: WeightMatrix, path: Optional[PathLike] = None) -> str:
    return matrix_to_csv(w.values, w.nodes, path)


# ---------------------------------------------------------------------------
# Signals and embeddings
# ---------------------------------------------------------------------------


def load_signal_csv(path: PathLike, graph: Graph) -> Signal:
    """``node,value`` CSV as a Signal in graph order. Node set must match exactly."""
    df = _read_csv(path, "signal CSV")
    if list(df.columns) != ["value"]:
        raise FormatError(f"signal CSV {path}: expected columns node,value, got {[NODE_COLUMN, *df.columns]}")
    order = _align(list(df.index), graph, f"signal CSV {path}")
    values = _numeric(df.loc[order], f"signal CSV {path}")[:, 0]
    return Signal(values=values, nodes=tuple(order))


def signal_to_csv(x: Signal, path: Optional[PathLike] = None) -> str:
    df = pd.DataFrame({"value": x.values}, index=pd.Index(list(x.nodes), name=NODE_COLUMN))
    return _emit(df, path)


def load_embedding_csv(path: PathLike, graph: Optional[Graph] = None) -> Embedding:
    """``node,c1,...,cd`` CSV; reordered into graph order when ``graph`` is given."""
    df = _read_csv(path, "embedding CSV")
    if df.shape[1] < 1:
        raise FormatError(f"embedding CSV {path}: no coordinate columns")
    e = Embedding(coordinates=_numeric(df, f"embedding CSV {path}"), nodes=tuple(df.index))
    if graph is not None:
        _align(e.nodes, graph, f"embedding CSV {path}")
        e = relabel(e, graph.nodes)
    return e


def embedding_to_csv(e: Embedding, path: Optional[PathLike] = None) -> str:
    columns = [f"c{i}" for i in range(1, e.d + 1)]
    df = pd.DataFrame(e.coordinates, index=pd.Index(list(e.nodes), name=NODE_COLUMN), columns=columns)
    return _emit(df, path)

