"""Run configuration: built-in defaults, then YAML, then CLI flags.

The YAML lives at ``~/.config/netcorr/netcorr.yaml`` by convention and is
optional. It may set any of ``DEFAULT_KEYS``; input paths are always
per-invocation and come only from flags.

Missing-file behaviour of ``load_yaml_config``:

  - ``on_missing="exit"`` : log an error and ``sys.exit(1)``
  - ``on_missing="raise"``: let the ``FileNotFoundError`` propagate
  - ``on_missing="empty"``: return an empty dict (the default location)
"""

from __future__ import annotations

import logging
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import yaml

from netcorr.spectral import DEFAULT_RTOL
from netcorr.weights import DEFAULT_K

logger = logging.getLogger(__name__)

OnMissing = Literal["exit", "raise", "empty"]

COMMANDS: Tuple[str, ...] = ("validate", "corr", "resistance", "embed", "scan")
METRICS: Tuple[str, ...] = ("shortest-path", "resistance", "embedding", "identity", "external")
SCAN_FAMILIES: Tuple[str, ...] = ("erdos_renyi", "complete", "path")

# Keys a YAML defaults file may set, with their built-in values.
DEFAULT_KEYS: Dict[str, Any] = {
    "metric": "resistance",
    "k": DEFAULT_K,
    "tolerance": DEFAULT_RTOL,
    "seed": 0,
    "trials": 100,
    "workers": 1,
    "n_min": 5,
    "n_max": 30,
    "p_min": 0.1,
    "p_max": 0.5,
    "family": "erdos_renyi",
}


def load_yaml_config(
    path: Union[str, os.PathLike, None],
    *,
    on_missing: OnMissing = "exit",
) -> dict:
    """Load a YAML mapping. An empty or ``null`` document yields ``{}``."""
    if path is None or not Path(path).expanduser().exists():
        if on_missing == "empty":
            return {}
        if on_missing == "raise":
            raise FileNotFoundError(path)
        logger.error(f"Configuration file not found: {path}")
        sys.exit(1)

    try:
        with open(Path(path).expanduser(), "r") as fh:
            config = yaml.safe_load(fh) or {}
    except yaml.YAMLError as e:
        raise ValueError(f"Error parsing YAML configuration ({path}): {e}") from e
    if not isinstance(config, dict):
        raise ValueError(f"YAML configuration {path} must be a mapping")
    return config


def _coerce(key: str, value: Any) -> Any:
    """Convert a YAML value to the type of ``DEFAULT_KEYS[key]`` without silent rounding."""
    kind = type(DEFAULT_KEYS[key])
    if isinstance(value, bool):
        raise ValueError(f"Config key {key!r} must be a {kind.__name__}, got {value!r}")
    if kind is int:
        if isinstance(value, int):
            return value
        if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
            return int(value)
        number = float(value)
        if not number.is_integer():
            raise ValueError(f"Config key {key!r} must be an integer, got {value!r}")
        return int(number)
    return kind(value)


def parse_defaults(raw: Dict[str, Any]) -> Dict[str, Any]:
    """Validate a YAML defaults mapping and merge it over ``DEFAULT_KEYS``. Pure function."""
    unknown = sorted(set(raw) - set(DEFAULT_KEYS))
    if unknown:
        raise ValueError(f"Unknown config key(s): {unknown}")
    merged = dict(DEFAULT_KEYS)
    try:
        for key, value in raw.items():
            merged[key] = _coerce(key, value)
    except (TypeError, ValueError) as e:
        raise ValueError(f"Bad config value: {e}") from e
    for key in ("k", "tolerance", "trials", "workers"):
        if not merged[key] > 0:
            raise ValueError(f"Config key {key!r} must be > 0, got {merged[key]!r}")
    if merged["metric"] not in METRICS:
        raise ValueError(f"Config key 'metric' must be one of {METRICS}, got {merged['metric']!r}")
    if merged["family"] not in SCAN_FAMILIES:
        raise ValueError(f"Config key 'family' must be one of {SCAN_FAMILIES}, got {merged['family']!r}")
    return merged


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved CLI invocation."""

    command: str
    graph: Optional[Path] = None
    x: Optional[Path] = None
    y: Optional[Path] = None
    embedding: Optional[Path] = None
    commute_time: bool = False
    weights: Optional[Path] = None
    metric: str = DEFAULT_KEYS["metric"]
    k: float = DEFAULT_K
    tolerance: float = DEFAULT_RTOL
    output: Optional[Path] = None
    unsafe_override: bool = False
    k_sweep: bool = False
    seed: int = 0
    trials: int = DEFAULT_KEYS["trials"]
    workers: int = 1
    n_min: int = DEFAULT_KEYS["n_min"]
    n_max: int = DEFAULT_KEYS["n_max"]
    p_min: float = DEFAULT_KEYS["p_min"]
    p_max: float = DEFAULT_KEYS["p_max"]
    family: str = "erdos_renyi"
    include_k23: bool = False

    def __post_init__(self) -> None:
        problems = self.problems()
        if problems:
            raise ValueError("; ".join(problems))

    def problems(self) -> List[str]:
        """Every reason this configuration cannot run (empty when fine)."""
        out: List[str] = []
        if self.command not in COMMANDS:
            out.append(f"unknown command {self.command!r}")
        if self.metric not in METRICS:
            out.append(f"unknown metric {self.metric!r}; choose from {METRICS}")
        if not self.k > 0:
            out.append(f"k must be > 0, got {self.k!r}")
        if not self.tolerance > 0:
            out.append(f"tolerance must be > 0, got {self.tolerance!r}")
        if self.trials < 1:
            out.append("trials must be >= 1")
        if self.workers < 1:
            out.append("workers must be >= 1")
        if self.family not in SCAN_FAMILIES:
            out.append(f"unknown scan family {self.family!r}")
        if self.command != "scan" and self.graph is None:
            out.append(f"{self.command} needs --graph")
        if self.command == "corr" and (self.x is None or self.y is None):
            out.append("corr needs --x and --y")
        if self.command in ("validate", "corr"):
            out.extend(self._metric_source_problems())
        return out

    def _metric_source_problems(self) -> List[str]:
        out: List[str] = []
        if self.metric == "embedding":
            if (self.embedding is None) == (not self.commute_time):
                out.append("metric 'embedding' needs exactly one of --embedding FILE or --commute-time")
        elif self.embedding is not None or self.commute_time:
            out.append(f"--embedding/--commute-time only apply to metric 'embedding', not {self.metric!r}")
        if self.metric == "external" and self.weights is None:
            out.append("metric 'external' needs --weights FILE")
        if self.metric != "external" and self.weights is not None:
            out.append(f"--weights only applies to metric 'external', not {self.metric!r}")
        if self.k_sweep and self.metric in ("identity", "external"):
            out.append(f"--k-sweep needs a distance metric, not {self.metric!r}")
        return out

    def report_items(self) -> List[Tuple[str, Any]]:
        """The settings a report embeds so the run can be repeated from it."""
        if self.command == "scan":
            keys = ["command", "k", "tolerance", "seed", "trials", "family",
                    "n_min", "n_max", "p_min", "p_max", "include_k23"]
        else:
            keys = ["command", "graph", "metric", "k", "tolerance"]
            if self.metric == "embedding":
                keys += ["embedding", "commute_time"]
            if self.metric == "external":
                keys.append("weights")
            if self.command == "corr":
                keys += ["x", "y", "unsafe_override"]
        return [(key, getattr(self, key)) for key in keys]


def build_run_config(cli: Dict[str, Any], defaults: Dict[str, Any]) -> RunConfig:
    """Layer CLI values (``None`` means "not given") over YAML defaults."""
    known = {f.name for f in fields(RunConfig)}
    values = {key: value for key, value in defaults.items() if key in known}
    values.update({key: value for key, value in cli.items() if key in known and value is not None})
    return RunConfig(**values)
