"""Random-graph search for shortest-path weight matrices that fail certification.

Each trial draws a graph, builds W = exp(-k P) from its hop distances and
certifies W. Failures are common well beyond the five-node bipartite
example, and each one is reproducible from its recorded
(seed, n, p, family) alone.

Pseudorandom generator: numpy's PCG64 (``numpy.random.default_rng``),
whose streams are identical on every platform. A master generator seeded
with the scan seed draws every trial's (n, p, graph seed) up front, so the
trials can run on a thread pool in any order without changing the report.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple

import numpy as np

from netcorr.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    is_connected,
    path_graph,
    shortest_paths,
)
from netcorr.spectral import DEFAULT_RTOL, certify_weight
from netcorr.weights import exp_weight

logger = logging.getLogger(__name__)

Family = Literal["erdos_renyi", "complete", "path"]
FAMILIES: Tuple[str, ...] = ("erdos_renyi", "complete", "path")

K23_LABEL = "K2,3"

# Graph seeds are drawn below this bound so they print and parse cleanly.
_SEED_BOUND = 2**31 - 1


@dataclass(frozen=True)
class TrialSpec:
    """Everything needed to rebuild one sampled graph."""

    index: int
    n: int
    p: float
    seed: int
    family: Family


@dataclass(frozen=True)
class ScanFailure:
    """One graph whose exp(-k P) weight matrix was certified invalid."""

    label: str
    n: int
    p: Optional[float]
    seed: Optional[int]
    family: str
    k: float
    min_nonforced: float
    negative_count: int


@dataclass(frozen=True)
class ScanReport:
    """Aggregate scan result; ``failures`` sorted by (seed, label)."""

    trials: int
    evaluated: int
    skipped_disconnected: int
    injected: int
    k: float
    tolerance: float
    seed: int
    family: str
    n_range: Tuple[int, int]
    p_range: Tuple[float, float]
    failures: Tuple[ScanFailure, ...] = field(default_factory=tuple)

    @property
    def failure_rate(self) -> float:
        """Failures over evaluated graphs (connected samples plus injected ones)."""
        return len(self.failures) / self.evaluated if self.evaluated else 0.0


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p) from a PCG64 stream.

    One uniform draw per unordered pair (i < j) in row-major order; the
    pair is an edge when the draw is below ``p``. Nodes are "0".."n-1".
    """
    if n < 2:
        raise ValueError(f"random_graph needs n >= 2, got {n}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p!r}")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(len(rows)) < p
    labels = [str(i) for i in range(n)]
    return Graph.from_edges(labels, [(labels[i], labels[j]) for i, j in zip(rows[keep], cols[keep])])


def build_trial_graph(spec: TrialSpec) -> Graph:
    if spec.family == "complete":
        return complete_graph(spec.n)
    if spec.family == "path":
        return path_graph(spec.n)
    return random_graph(spec.n, spec.p, spec.seed)


def reproduce(failure: ScanFailure) -> Graph:
    """Rebuild the graph behind ``failure`` from its recorded parameters."""
    if failure.label == K23_LABEL:
        return complete_bipartite_graph(2, 3)
    spec = TrialSpec(index=-1, n=failure.n, p=failure.p or 1.0, seed=failure.seed or 0, family=failure.family)
    return build_trial_graph(spec)


def draw_trials(
    trials: int,
    seed: int,
    n_range: Tuple[int, int],
    p_range: Tuple[float, float],
    family: Family = "erdos_renyi",
) -> List[TrialSpec]:
    """Draw every trial's parameters from the master seed, in order."""
    n_lo, n_hi = n_range
    p_lo, p_hi = p_range
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 2 <= n_lo <= n_hi:
        raise ValueError(f"need 2 <= n_min <= n_max, got {n_range}")
    if not 0.0 < p_lo <= p_hi <= 1.0:
        raise ValueError(f"need 0 < p_min <= p_max <= 1, got {p_range}")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    master = np.random.default_rng(seed)
    specs = []
    for t in range(trials):
        n = int(master.integers(n_lo, n_hi, endpoint=True))
        p = float(master.uniform(p_lo, p_hi)) if p_hi > p_lo else float(p_lo)
        graph_seed = int(master.integers(0, _SEED_BOUND))
        specs.append(TrialSpec(index=t, n=n, p=p, seed=graph_seed, family=family))
    return specs


# ---------------------------------------------------------------------------
# Scan
# ---------------------------------------------------------------------------


def _evaluate(g: Graph, k: float, tol: float) -> Tuple[float, int, bool]:
    verdict = certify_weight(exp_weight(shortest_paths(g), k), tol)
    return verdict.min_nonforced, verdict.negative_count(), verdict.is_valid


def _run_trial(spec: TrialSpec, k: float, tol: float) -> Tuple[TrialSpec, Optional[ScanFailure], bool]:
    g = build_trial_graph(spec)
    if not is_connected(g):
        logger.debug(f"trial {spec.index}: n={spec.n} p={spec.p:.3f} disconnected, skipped")
        return spec, None, False
    min_eig, negatives, valid = _evaluate(g, k, tol)
    logger.debug(f"trial {spec.index}: n={spec.n} p={spec.p:.3f} min eigenvalue {min_eig:.6g}")
    if valid:
        return spec, None, True
    failure = ScanFailure(
        label=f"{spec.family}-{spec.index}",
        n=spec.n,
        p=spec.p,
        seed=spec.seed,
        family=spec.family,
        k=k,
        min_nonforced=min_eig,
        negative_count=negatives,
    )
    return spec, failure, True


def find_counterexamples(
    n_range: Tuple[int, int],
    p_range: Tuple[float, float],
    k: float,
    trials: int,
    seed: int,
    *,
    family: Family = "erdos_renyi",
    include_k23: bool = False,
    tol: float = DEFAULT_RTOL,
    workers: int = 1,
) -> ScanReport:
    """Sample ``trials`` graphs and record those whose exp(-k P) is invalid.

    Disconnected samples are counted in ``skipped_disconnected`` and not
    replaced, so exactly ``trials`` graphs are drawn. ``include_k23`` adds
    the five-node complete bipartite graph as an extra evaluated graph.
    """
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k!r}")
    specs = draw_trials(trials, seed, n_range, p_range, family)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda s: _run_trial(s, k, tol), specs))
    else:
        outcomes = [_run_trial(s, k, tol) for s in specs]

    failures: List[ScanFailure] = [f for _, f, _ in outcomes if f is not None]
    evaluated = sum(1 for _, _, connected in outcomes if connected)
    skipped = trials - evaluated
    if skipped:
        logger.warning(f"{skipped} of {trials} sampled graphs were disconnected and skipped")

    injected = 0
    if include_k23:
        injected = 1
        g = complete_bipartite_graph(2, 3)
        min_eig, negatives, valid = _evaluate(g, k, tol)
        if not valid:
            failures.append(
                ScanFailure(
                    label=K23_LABEL, n=g.n, p=None, seed=None, family="complete_bipartite",
                    k=k, min_nonforced=min_eig, negative_count=negatives,
                )
            )

    failures.sort(key=lambda f: (f.seed if f.seed is not None else -1, f.label))
    report = ScanReport(
        trials=trials,
        evaluated=evaluated + injected,
        skipped_disconnected=skipped,
        injected=injected,
        k=k,
        tolerance=tol,
        seed=seed,
        family=family,
        n_range=tuple(n_range),
        p_range=tuple(p_range),
        failures=tuple(failures),
    )
    logger.info(
        f"Scan finished: {len(failures)} failure(s) in {report.evaluated} evaluated graph(s), "
        f"{skipped} skipped"
    )
    return report
