"""Distance families whose exponential kernel is always a valid weight matrix.

Both are negative-type metrics:

  * effective resistance, treating each edge as a 1-Ohm resistor;
  * Euclidean distances between embedded nodes.

The commute-time embedding ties them together: it places nodes in
R^(n-1) so that squared Euclidean distance equals effective resistance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from netcorr.distance import DistanceKind, DistanceMatrix, frozen_array
from netcorr.graph import Graph, GraphError, laplacian, require_connected
from netcorr.spectral import EigenDecomposition, eig_sym

logger = logging.getLogger(__name__)

__all__ = [
    "DistanceKind",
    "DistanceMatrix",
    "Embedding",
    "commute_time_embedding",
    "effective_resistance",
    "embedding_distances",
    "laplacian_pseudoinverse",
    "relabel",
    "squared_distances",
]

# Laplacian eigenvalues at or below this fraction of the largest count as zero.
PINV_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class Embedding:
    """One row of finite coordinates per node."""

    coordinates: np.ndarray
    nodes: Tuple[str, ...]

    def __post_init__(self) -> None:
        coords = np.asarray(self.coordinates, dtype=float)
        if coords.ndim != 2:
            raise ValueError(f"Embedding coordinates must be 2-D, got shape {coords.shape}")
        if coords.shape[0] != len(self.nodes):
            raise ValueError(f"Embedding has {coords.shape[0]} rows but {len(self.nodes)} node labels")
        if not np.all(np.isfinite(coords)):
            raise ValueError("Embedding coordinates must be finite")
        object.__setattr__(self, "coordinates", frozen_array(coords))
        object.__setattr__(self, "nodes", tuple(str(v) for v in self.nodes))

    @property
    def n(self) -> int:
        return self.coordinates.shape[0]

    @property
    def d(self) -> int:
        return self.coordinates.shape[1]


def _connected_spectrum(g: Graph, what: str) -> EigenDecomposition:
    """Laplacian eigenpairs, checked to have exactly one zero eigenvalue."""
    require_connected(g, what)
    eig = eig_sym(laplacian(g))
    cutoff = PINV_RTOL * max(float(eig.values[-1]), 1.0)
    zeros = int(np.sum(eig.values <= cutoff))
    if zeros != 1:
        raise GraphError(f"{what}: expected one zero Laplacian eigenvalue, found {zeros}")
    return eig


def laplacian_pseudoinverse(g: Graph) -> np.ndarray:
    """Moore-Penrose pseudoinverse of L, inverting only the n-1 nonzero eigenvalues."""
    eig = _connected_spectrum(g, "laplacian_pseudoinverse")
    vecs = eig.vectors[:, 1:]
    return (vecs / eig.values[1:]) @ vecs.T


def effective_resistance(g: Graph) -> DistanceMatrix:
    """Omega_ij = L+_ii + L+_jj - 2 L+_ij.

    Raises:
        GraphError: if ``g`` is disconnected.
    """
    pinv = laplacian_pseudoinverse(g)
    diag = np.diag(pinv)
    omega = diag[:, None] + diag[None, :] - 2.0 * pinv
    omega = (omega + omega.T) / 2.0
    np.fill_diagonal(omega, 0.0)
    logger.debug(f"Effective resistance computed for {g.n} nodes")
    return DistanceMatrix(values=omega, kind="resistance", nodes=g.nodes)


def embedding_distances(e: Embedding) -> DistanceMatrix:
    """Pairwise Euclidean distances between embedded nodes.

    Coincident rows give zero off-diagonal entries. They are allowed (the
    result is still of negative type) but logged.
    """
    if e.n < 2:
        raise ValueError("embedding_distances needs at least 2 nodes")
    delta = squareform(pdist(e.coordinates, metric="euclidean"))
    dm = DistanceMatrix(values=delta, kind="embedding", nodes=e.nodes)
    coincident = dm.coincident_pairs()
    if coincident:
        shown = ", ".join(f"{a}={b}" for a, b in coincident[:5])
        logger.warning(f"{len(coincident)} pair(s) of embedded nodes coincide: {shown}")
    return dm


def commute_time_embedding(g: Graph) -> Embedding:
    """Coordinates z with ||z_i - z_j||^2 = Omega_ij, dimension n - 1.

    Each nonzero-eigenvalue Laplacian eigenvector is scaled by
    1 / sqrt(eigenvalue). This is the resistance-scaled version; multiply
    by sqrt(2m) for true commute times.
    """
    eig = _connected_spectrum(g, "commute_time_embedding")
    coords = eig.vectors[:, 1:] / np.sqrt(eig.values[1:])
    return Embedding(coordinates=coords, nodes=g.nodes)


def squared_distances(e: Embedding) -> np.ndarray:
    """||z_i - z_j||^2 for every pair."""
    return squareform(pdist(e.coordinates, metric="sqeuclidean"))


def relabel(e: Embedding, order: Sequence[str]) -> Embedding:
    """Reorder embedding rows to follow ``order`` (labels must biject)."""
    index = {v: i for i, v in enumerate(e.nodes)}
    if set(order) != set(index) or len(order) != len(index):
        missing = sorted(set(order) - set(index))
        extra = sorted(set(index) - set(order))
        raise ValueError(f"Embedding labels do not match the graph (missing {missing}, extra {extra})")
    rows = [index[v] for v in order]
    return Embedding(coordinates=e.coordinates[rows], nodes=tuple(order))
