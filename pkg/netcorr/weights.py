"""Weight matrices W for the network Pearson correlation.

Only the entrywise exponential kernel W = exp(-k D) is built in. Any other
symmetric W can be loaded from CSV (``source_kind="external"``) and sent
straight to certification.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from netcorr.distance import DistanceMatrix, check_square_symmetric, frozen_array

logger = logging.getLogger(__name__)

DEFAULT_K = 1.0


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric n×n weights plus the scale ``k`` that produced them.

    ``source_kind`` is the DistanceMatrix kind for kernel weights, or
    ``"identity"`` / ``"external"``. ``k`` is None unless a kernel was used.
    """

    values: np.ndarray
    k: Optional[float]
    source_kind: str
    nodes: Tuple[str, ...]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        check_square_symmetric(values, "weight matrix")
        if len(self.nodes) != values.shape[0]:
            raise ValueError(
                f"Weight matrix is {values.shape[0]}x{values.shape[0]} "
                f"but {len(self.nodes)} node labels were given"
            )
        object.__setattr__(self, "values", frozen_array((values + values.T) / 2.0))
        object.__setattr__(self, "nodes", tuple(str(v) for v in self.nodes))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def describe(self) -> str:
        """Short provenance string used in reports and verdicts."""
        if self.k is None:
            return self.source_kind
        return f"exp(-k*{self.source_kind}), k={self.k!r}"


def exp_weight(d: DistanceMatrix, k: float = DEFAULT_K) -> WeightMatrix:
    """W_ij = exp(-k * d_ij), entrywise.

    Raises:
        ValueError: if ``k`` is not strictly positive. k = 0 gives the
            all-ones matrix, whose centred form is identically zero.
    """
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k!r}")
    values = np.exp(-float(k) * d.values)
    return WeightMatrix(values=values, k=float(k), source_kind=d.kind, nodes=d.nodes)


def identity_weight(nodes: Union[int, Sequence[str]]) -> WeightMatrix:
    """The identity W, under which the network Pearson is the classical one.

    ``nodes`` is either a label sequence or a count (labels become "0".."n-1").
    """
    labels = tuple(str(i) for i in range(nodes)) if isinstance(nodes, int) else tuple(nodes)
    if len(labels) < 2:
        raise ValueError("identity_weight needs n >= 2")
    return WeightMatrix(values=np.eye(len(labels)), k=None, source_kind="identity", nodes=labels)


def external_weight(values: np.ndarray, nodes: Sequence[str]) -> WeightMatrix:
    """Wrap a user-supplied W. Nothing about it is assumed beyond symmetry."""
    return WeightMatrix(values=values, k=None, source_kind="external", nodes=tuple(nodes))
