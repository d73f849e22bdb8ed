"""CLI for certifying weight matrices and computing network correlations.

Usage::

    netcorr validate --graph g.txt --metric shortest-path --k 0.25 [--k-sweep]
    netcorr corr     --graph g.txt --x x.csv --y y.csv --metric resistance
    netcorr resistance --graph g.txt [--output omega.csv]
    netcorr embed      --graph g.txt [--output z.csv]
    netcorr scan     --trials 200 --seed 7 [--include-k23] [--family complete]

Exit codes:

  * 0: success; for ``validate`` and ``corr`` the weight matrix is valid
  * 2: the weight matrix was certified invalid
  * 1: usage error, unreadable or ill-formed input, or a non-real
    correlation under ``--unsafe-override`` with a valid weight matrix

Reports go to stdout (or ``--output``) and logs to stderr. Every report
starts with the resolved configuration, so a run can be repeated from its
own output.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from netcorr.common.logging import setup_logging
from netcorr.common.paths import DEFAULT_CONFIG_PATH
from netcorr.config import METRICS, SCAN_FAMILIES, RunConfig, build_run_config, load_yaml_config, parse_defaults
from netcorr.correlation import InvalidWeightError, network_pearson, pearson
from netcorr.distance import DistanceMatrix
from netcorr.graph import Graph, GraphError, connected_components, is_connected, shortest_paths
from netcorr.io import (
    embedding_to_csv,
    load_edge_list,
    load_embedding_csv,
    load_signal_csv,
    load_weight_csv,
    matrix_to_csv,
)
from netcorr.metrics import commute_time_embedding, effective_resistance, embedding_distances
from netcorr.report import (
    correlation_section,
    csv_block,
    emit,
    k_sweep_block,
    render,
    scan_sections,
    section,
    verdict_section,
)
from netcorr.scan import find_counterexamples
from netcorr.spectral import certify_negative_type, certify_weight, sweep_k, worst_direction
from netcorr.weights import WeightMatrix, exp_weight, identity_weight

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2


# ---------------------------------------------------------------------------
# Weight construction
# ---------------------------------------------------------------------------


def _needs_connectivity(config: RunConfig) -> bool:
    if config.command in ("resistance", "embed"):
        return True
    return config.metric in ("shortest-path", "resistance") or (
        config.metric == "embedding" and config.commute_time
    )


def _load_graph(config: RunConfig) -> Graph:
    g = load_edge_list(config.graph)
    if _needs_connectivity(config) and not is_connected(g):
        shown = "; ".join(" ".join(c) for c in connected_components(g))
        raise GraphError(
            f"{config.command} with metric {config.metric!r} needs a connected graph; "
            f"components: {shown}"
        )
    return g


def _distances(config: RunConfig, g: Graph) -> Optional[DistanceMatrix]:
    """The distance matrix behind the chosen metric, or None for identity/external W."""
    if config.metric == "shortest-path":
        return shortest_paths(g, workers=config.workers)
    if config.metric == "resistance":
        return effective_resistance(g)
    if config.metric == "embedding":
        e = commute_time_embedding(g) if config.commute_time else load_embedding_csv(config.embedding, g)
        return embedding_distances(e)
    return None


def build_weight(config: RunConfig, g: Graph) -> Tuple[WeightMatrix, Optional[DistanceMatrix]]:
    """W for ``config.metric`` on ``g``, plus the distances it came from (if any)."""
    if config.metric == "identity":
        return identity_weight(g.nodes), None
    if config.metric == "external":
        return load_weight_csv(config.weights, g), None
    d = _distances(config, g)
    return exp_weight(d, config.k), d


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(config: RunConfig) -> Tuple[int, str]:
    """Certify W (and, when there is one, the negative type of D)."""
    g = _load_graph(config)
    w, d = build_weight(config, g)
    verdict = certify_weight(w, config.tolerance)
    parts: List[List[str]] = [verdict_section("weight_certificate", verdict)]
    if d is not None:
        parts.append(verdict_section("negative_type", certify_negative_type(d, config.tolerance)))
    if not verdict.is_valid:
        v = worst_direction(w)
        parts.append(csv_block("worst_direction", ["node", "value"], zip(w.nodes, (float(t) for t in v))))
        logger.warning(
            f"W is not positive definite on zero-sum vectors: {verdict.negative_count()} negative "
            f"eigenvalue(s), smallest {verdict.min_nonforced:.6g}"
        )
    if config.k_sweep and d is not None:
        parts.append(k_sweep_block(sweep_k(d, tol=config.tolerance)))
    logger.info(f"{w.describe()}: {verdict.verdict}")
    return (EXIT_OK if verdict.is_valid else EXIT_INVALID), render("validate", config.report_items(), *parts)


def cmd_corr(config: RunConfig) -> Tuple[int, str]:
    """Network Pearson correlation of the two signals under the certified W."""
    g = _load_graph(config)
    x = load_signal_csv(config.x, g)
    y = load_signal_csv(config.y, g)
    w, _ = build_weight(config, g)
    verdict = certify_weight(w, config.tolerance)
    parts: List[List[str]] = [verdict_section("weight_certificate", verdict)]

    if not verdict.is_valid and not config.unsafe_override:
        logger.error(
            f"W ({verdict.provenance}) is not positive definite on zero-sum vectors "
            f"(smallest eigenvalue {verdict.min_nonforced:.6g}); correlations may be imaginary, "
            f"infinite or outside [-1, 1]. Refusing without --unsafe-override."
        )
        return EXIT_INVALID, render("corr", config.report_items(), *parts)

    result = network_pearson(x, y, w, verdict, unsafe_override=config.unsafe_override)
    parts.append(correlation_section(result))
    if not (x.is_constant() or y.is_constant()):
        parts.append(section("classical", [("rho", pearson(x, y))]))

    if not verdict.is_valid:
        code = EXIT_INVALID
    elif not result.is_real:
        code = EXIT_ERROR
    else:
        code = EXIT_OK
    if result.anomaly:
        logger.warning(f"{result.anomaly} under {verdict.provenance}")
    return code, render("corr", config.report_items(), *parts)


def cmd_resistance(config: RunConfig) -> Tuple[int, str]:
    """Effective-resistance matrix of the graph as a matrix CSV."""
    omega = effective_resistance(_load_graph(config))
    return EXIT_OK, matrix_to_csv(omega.values, omega.nodes)


def cmd_embed(config: RunConfig) -> Tuple[int, str]:
    """Commute-time embedding of the graph as an embedding CSV."""
    return EXIT_OK, embedding_to_csv(commute_time_embedding(_load_graph(config)))


def cmd_scan(config: RunConfig) -> Tuple[int, str]:
    """Search random graphs for shortest-path kernels that fail certification."""
    report = find_counterexamples(
        (config.n_min, config.n_max),
        (config.p_min, config.p_max),
        config.k,
        config.trials,
        config.seed,
        family=config.family,
        include_k23=config.include_k23,
        tol=config.tolerance,
        workers=config.workers,
    )
    return EXIT_OK, render("scan", config.report_items(), scan_sections(report))


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig], Tuple[int, str]]] = {
    "validate": cmd_validate,
    "corr": cmd_corr,
    "resistance": cmd_resistance,
    "embed": cmd_embed,
    "scan": cmd_scan,
}


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _path(value: str) -> Path:
    return Path(value).expanduser()


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit 1, keeping 2 for invalid weight matrices."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    # Every value defaults to None so YAML defaults can fill what the CLI omits.
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", type=_path,
                        help=f"YAML defaults (default {DEFAULT_CONFIG_PATH}, ignored when missing).")
    common.add_argument("--output", type=_path, help="Write the report here instead of stdout.")
    common.add_argument("--k", type=float, help="Kernel scale in W = exp(-k D) (default 1).")
    common.add_argument("--tol", dest="tolerance", type=float,
                        help="Relative zero-threshold for eigenvalues (default 1e-9).")
    common.add_argument("--workers", type=int, help="Threads for distance sweeps and scan trials.")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG.")
    common.add_argument("--quiet", action="store_true", help="Log warnings and errors only.")

    graph = _ArgumentParser(add_help=False)
    graph.add_argument("--graph", type=_path, required=True, help="Edge-list file.")

    metric = _ArgumentParser(add_help=False)
    metric.add_argument("--metric", choices=METRICS, help="Distance (or weight) source for W.")
    metric.add_argument("--embedding", type=_path, help="Embedding CSV for --metric embedding.")
    metric.add_argument("--commute-time", action="store_true", default=None,
                        help="Use the commute-time embedding for --metric embedding.")
    metric.add_argument("--weights", type=_path, help="Matrix CSV for --metric external.")

    p = _ArgumentParser(prog="netcorr", description="Network Pearson correlation with certified weight matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common, graph, metric], help="Certify a weight matrix.")
    v.add_argument("--k-sweep", action="store_true", default=None,
                   help="Also certify exp(-k D) over a logarithmic grid of k.")

    c = sub.add_parser("corr", parents=[common, graph, metric], help="Network Pearson correlation of two signals.")
    c.add_argument("--x", type=_path, required=True, help="Signal CSV (node,value).")
    c.add_argument("--y", type=_path, required=True, help="Signal CSV (node,value).")
    c.add_argument("--unsafe-override", action="store_true", default=None,
                   help="Compute even when W is invalid; non-real results are labelled.")

    sub.add_parser("resistance", parents=[common, graph], help="Write the effective-resistance matrix CSV.")
    sub.add_parser("embed", parents=[common, graph], help="Write the commute-time embedding CSV.")

    s = sub.add_parser("scan", parents=[common], help="Search random graphs for invalid shortest-path kernels.")
    s.add_argument("--seed", type=int, help="Master seed (default 0).")
    s.add_argument("--trials", type=int, help="Graphs to sample (default 100).")
    s.add_argument("--n-min", type=int, help="Smallest node count (default 5).")
    s.add_argument("--n-max", type=int, help="Largest node count (default 30).")
    s.add_argument("--p-min", type=float, help="Smallest edge probability (default 0.1).")
    s.add_argument("--p-max", type=float, help="Largest edge probability (default 0.5).")
    s.add_argument("--family", choices=SCAN_FAMILIES, help="Graph family (default erdos_renyi).")
    s.add_argument("--include-k23", action="store_true", default=None,
                   help="Also evaluate the five-node complete bipartite graph.")
    return p.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parse_args(argv)
    setup_logging(verbose=args.verbose, quiet=args.quiet)

    try:
        if args.config is not None:
            raw = load_yaml_config(args.config, on_missing="raise")
        else:
            raw = load_yaml_config(DEFAULT_CONFIG_PATH, on_missing="empty")
        config = build_run_config(vars(args), parse_defaults(raw))
        code, text = COMMAND_HANDLERS[config.command](config)
        emit(text, config.output)
    except InvalidWeightError as e:
        logger.error(str(e))
        return EXIT_INVALID
    except (ValueError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
