"""Undirected simple graphs: ingestion, connectivity, distances, Laplacian.

Node order is first-appearance order in the input and every matrix in
netcorr indexes nodes in that order.

Edge-list text format (UTF-8)::

    # comment
    a b          undirected edge
    a -- b       same thing
    c            isolated node
    a -> b       directed edge, rejected unless directed_forbidden=False

All functions in this module are pure. File reading lives in ``io.py``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components as _cc
from scipy.sparse.csgraph import laplacian as _laplacian
from scipy.sparse.csgraph import shortest_path

from netcorr.distance import DistanceMatrix, frozen_array

logger = logging.getLogger(__name__)

Edge = Tuple[str, str]

_UNDIRECTED_SEPARATORS = ("--",)
_DIRECTED_SEPARATORS = ("->", "<-")


class GraphError(ValueError):
    """Malformed graph input, or a graph that violates a precondition."""


@dataclass(frozen=True, eq=False)
class Graph:
    """An undirected simple graph with labelled nodes.

    ``edges`` holds each edge once, endpoints in node order. ``adjacency``
    is the read-only 0/1 matrix in the same order.
    """

    nodes: Tuple[str, ...]
    edges: FrozenSet[Edge]
    adjacency: np.ndarray

    @classmethod
    def from_edges(cls, nodes: Sequence[str], edges: Iterable[Tuple[str, str]]) -> "Graph":
        """Build a graph, collapsing duplicate edges. Every endpoint must be in ``nodes``."""
        labels = tuple(str(v) for v in nodes)
        if len(set(labels)) != len(labels):
            raise GraphError("Node labels must be unique")
        index = {v: i for i, v in enumerate(labels)}
        n = len(labels)
        adjacency = np.zeros((n, n), dtype=float)
        canonical = set()
        for a, b in edges:
            a, b = str(a), str(b)
            if a not in index or b not in index:
                raise GraphError(f"Edge ({a}, {b}) references an undeclared node")
            if a == b:
                raise GraphError(f"Self-loop on node {a!r} is not allowed")
            i, j = sorted((index[a], index[b]))
            adjacency[i, j] = adjacency[j, i] = 1.0
            canonical.add((labels[i], labels[j]))
        return cls(nodes=labels, edges=frozenset(canonical), adjacency=frozen_array(adjacency))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self) -> Dict[str, int]:
        """Label -> row position."""
        return {v: i for i, v in enumerate(self.nodes)}

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def _csr(self) -> csr_matrix:
        return csr_matrix(self.adjacency)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _split_line(line: str, lineno: int, directed_forbidden: bool) -> List[str]:
    tokens = line.split()
    for sep in _UNDIRECTED_SEPARATORS:
        tokens = [t for t in tokens if t != sep]
    directed = [t for t in tokens if t in _DIRECTED_SEPARATORS]
    if directed:
        if directed_forbidden:
            raise GraphError(f"line {lineno}: directed edge {line.strip()!r}; only undirected graphs are supported")
        logger.warning(f"line {lineno}: treating directed edge {line.strip()!r} as undirected")
        tokens = [t for t in tokens if t not in _DIRECTED_SEPARATORS]
    if len(tokens) > 2:
        raise GraphError(f"line {lineno}: expected one or two labels, got {len(tokens)} (weighted edges are not supported)")
    return tokens


def parse_edge_list(text: str, directed_forbidden: bool = True) -> Graph:
    """Parse edge-list text into a ``Graph``.

    Blank lines and ``#`` lines are ignored; a single-label line declares an
    isolated node. Duplicate edges (in either orientation) collapse.

    Raises:
        GraphError: self-loop, directed edge (when forbidden), more than two
            labels on a line, or fewer than 2 nodes in total.
    """
    nodes: Dict[str, None] = {}
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = _split_line(line, lineno, directed_forbidden)
        if len(tokens) == 2 and tokens[0] == tokens[1]:
            raise GraphError(f"line {lineno}: self-loop on {tokens[0]!r}")
        for t in tokens:
            nodes.setdefault(t, None)
        if len(tokens) == 2:
            edges.append((tokens[0], tokens[1]))
    if len(nodes) < 2:
        raise GraphError("graph must have >= 2 nodes")
    g = Graph.from_edges(list(nodes), edges)
    logger.debug(f"Parsed graph with {g.n} nodes and {g.m} edges")
    return g


def serialize_edge_list(g: Graph) -> str:
    """Render ``g`` in the edge-list format; ``parse_edge_list`` reads it back exactly.

    Nodes are declared up front so first-appearance order survives the trip.
    """
    lines = [f"# {g.n} nodes, {g.m} edges"]
    lines.extend(g.nodes)
    index = g.index()
    for a, b in sorted(g.edges, key=lambda e: (index[e[0]], index[e[1]])):
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    labels = [str(i) for i in range(n)]
    return Graph.from_edges(labels, [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    labels = [str(i) for i in range(n)]
    return Graph.from_edges(labels, list(zip(labels, labels[1:])))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with nodes u1..ua then v1..vb."""
    left = [f"u{i}" for i in range(1, a + 1)]
    right = [f"v{j}" for j in range(1, b + 1)]
    return Graph.from_edges(left + right, [(u, v) for u in left for v in right])


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    """True iff one breadth-first traversal from the first node reaches every node."""
    order = breadth_first_order(g._csr(), 0, directed=False, return_predecessors=False)
    return len(order) == g.n


def connected_components(g: Graph) -> List[List[str]]:
    """Node labels per component, components ordered by their first node."""
    _, labels = _cc(g._csr(), directed=False)
    groups: Dict[int, List[str]] = {}
    for node, comp in zip(g.nodes, labels):
        groups.setdefault(int(comp), []).append(node)
    return list(groups.values())


def require_connected(g: Graph, what: str) -> None:
    """Raise ``GraphError`` naming ``what`` if ``g`` has more than one component."""
    if not is_connected(g):
        count = len(connected_components(g))
        raise GraphError(f"{what} needs a connected graph; this one has {count} components (infinite distance)")


# ---------------------------------------------------------------------------
# Distances and Laplacian
# ---------------------------------------------------------------------------


def shortest_paths(g: Graph, workers: int = 1) -> DistanceMatrix:
    """All-pairs hop distances by a BFS sweep from every node.

    Sources are split into ``workers`` contiguous chunks; the result does
    not depend on ``workers``.

    Raises:
        GraphError: if ``g`` is disconnected.
    """
    require_connected(g, "shortest_paths")
    csr = g._csr()
    chunks = [c for c in np.array_split(np.arange(g.n), max(1, workers)) if len(c)]

    def sweep(sources: np.ndarray) -> np.ndarray:
        return shortest_path(csr, directed=False, unweighted=True, indices=sources)

    if len(chunks) == 1:
        dist = sweep(chunks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            dist = np.vstack(list(pool.map(sweep, chunks)))
    return DistanceMatrix(values=dist, kind="shortest_path", nodes=g.nodes)


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian L = Deg - A (rows sum to zero, PSD)."""
    return np.asarray(_laplacian(np.array(g.adjacency)), dtype=float)
