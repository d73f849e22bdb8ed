"""The DistanceMatrix value type shared by graph, metrics and weights.

Lives in its own module because ``graph.shortest_paths`` produces one and
``metrics`` (which depends on ``graph``) produces the other kinds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Literal, Tuple, Type

import numpy as np

DistanceKind = Literal["shortest_path", "resistance", "embedding", "external"]

DISTANCE_KINDS: Tuple[str, ...] = ("shortest_path", "resistance", "embedding", "external")

# Kinds whose off-diagonal entries must be strictly positive. Embedded nodes
# may coincide and external matrices are whatever the user hands us.
_STRICT_KINDS = ("shortest_path", "resistance")

SYMMETRY_RTOL = 1e-10


def frozen_array(values: np.ndarray) -> np.ndarray:
    """Return a float64 copy of ``values`` with the write flag cleared."""
    out = np.array(values, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def check_square_symmetric(
    values: np.ndarray, what: str = "matrix", error: Type[Exception] = ValueError
) -> None:
    """Raise ``error`` unless ``values`` is square and symmetric to 1e-10 relative."""
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise error(f"{what} must be square, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise error(f"{what} contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    asym = float(np.max(np.abs(values - values.T))) if values.size else 0.0
    if asym > SYMMETRY_RTOL * scale:
        raise error(f"{what} is not symmetric (max |m - m.T| = {asym:.3g})")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric n×n pairwise distances with a zero diagonal.

    ``values`` is stored symmetrised and read-only; ``nodes`` gives the row
    order. ``kind`` records where the numbers came from.
    """

    values: np.ndarray
    kind: DistanceKind
    nodes: Tuple[str, ...]

    def __post_init__(self) -> None:
        if self.kind not in DISTANCE_KINDS:
            raise ValueError(f"Unknown distance kind {self.kind!r}")
        values = np.asarray(self.values, dtype=float)
        check_square_symmetric(values, f"{self.kind} distance matrix")
        n = values.shape[0]
        if len(self.nodes) != n:
            raise ValueError(f"Distance matrix is {n}x{n} but {len(self.nodes)} node labels were given")
        if np.any(np.diag(values) != 0.0):
            raise ValueError("Distance matrix must have a zero diagonal")
        values = (values + values.T) / 2.0
        if self.kind in _STRICT_KINDS:
            off = values[~np.eye(n, dtype=bool)]
            if np.any(off <= 0.0):
                raise ValueError(f"{self.kind} distances must be strictly positive off the diagonal")
        object.__setattr__(self, "values", frozen_array(values))
        object.__setattr__(self, "nodes", tuple(str(v) for v in self.nodes))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def coincident_pairs(self) -> List[Tuple[str, str]]:
        """Label pairs (i < j) at distance exactly zero."""
        rows, cols = np.nonzero(np.triu(self.values == 0.0, k=1))
        return [(self.nodes[i], self.nodes[j]) for i, j in zip(rows, cols)]

    def violates_triangle_inequality(self, atol: float = 1e-10) -> bool:
        """True if some triple has d_ij > d_ik + d_kj + atol. O(n^3) memory, small n only."""
        v = self.values
        via = v[:, :, None] + v[None, :, :]  # via[i, k, j] = d_ik + d_kj
        return bool(np.any(v[:, None, :] > via + atol))
