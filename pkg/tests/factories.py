"""Shared graph, point-cloud and file factories for the netcorr tests."""

from pathlib import Path
from typing import Sequence

import numpy as np

from context import netcorr  # noqa: F401
from netcorr.graph import is_connected
from netcorr.metrics import Embedding
from netcorr.scan import random_graph

K23_EDGES = "u1 v1\nu1 v2\nu1 v3\nu2 v1\nu2 v2\nu2 v3\n"

# Smallest non-forced eigenvalue of J exp(-P/4) J for K2,3:
# 1 + 1.4 e^(-1/2) - 2.4 e^(-1/4).
K23_MIN_EIGENVALUE = 1.0 + 1.4 * np.exp(-0.5) - 2.4 * np.exp(-0.25)


def connected_random_graphs(count: int, n_range=(4, 12), p_range=(0.2, 0.7), seed: int = 0):
    """``count`` connected G(n, p) samples, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1], endpoint=True))
        p = float(rng.uniform(*p_range))
        g = random_graph(n, p, int(rng.integers(0, 2**31 - 1)))
        if is_connected(g):
            out.append(g)
    return out


def point_cloud(n: int, d: int, seed: int) -> Embedding:
    """Standard-normal points, labelled "0".."n-1"."""
    rng = np.random.default_rng(seed)
    return Embedding(coordinates=rng.standard_normal((n, d)), nodes=tuple(str(i) for i in range(n)))


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def write_signal(path: Path, nodes: Sequence[str], values: Sequence[float]) -> Path:
    lines = ["node,value"] + [f"{v},{x!r}" for v, x in zip(nodes, values)]
    return write(path, "\n".join(lines) + "\n")