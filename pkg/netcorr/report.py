"""Plain-text reports: ``key: value`` sections plus CSV blocks.

Floats are printed with 17 significant digits so a report pins down every
number it shows, and nothing time-dependent is ever written, so the same
run always produces the same bytes.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from netcorr.correlation import CorrelationResult
from netcorr.scan import ScanReport
from netcorr.spectral import SpectralVerdict


def fmt(value: Any) -> str:
    """Render one report value."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, complex):
        return f"{format(value.real, '.17g')}{'+' if value.imag >= 0 else '-'}{format(abs(value.imag), '.17g')}j"
    if isinstance(value, (tuple, list)):
        return ", ".join(fmt(v) for v in value)
    return str(value)


def section(title: str, items: Iterable[Tuple[str, Any]]) -> List[str]:
    lines = [f"[{title}]"]
    lines.extend(f"{key}: {fmt(value)}" for key, value in items)
    lines.append("")
    return lines


def csv_block(title: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> List[str]:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return [f"[{title}]"] + buf.getvalue().splitlines() + [""]


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


def verdict_section(title: str, verdict: SpectralVerdict) -> List[str]:
    return section(title, [
        ("kind", verdict.kind),
        ("provenance", verdict.provenance),
        ("verdict", verdict.verdict),
        ("tolerance", verdict.tolerance),
        ("zero_index", verdict.zero_index),
        ("forced_zero", verdict.forced_zero),
        ("min_nonforced", verdict.min_nonforced),
        ("negative_count", verdict.negative_count()),
        ("digest", verdict.digest),
        ("eigenvalues", verdict.eigenvalues),
    ])


def correlation_section(result: CorrelationResult) -> List[str]:
    items: List[Tuple[str, Any]] = [
        ("rho", result.rho),
        ("real", result.is_real),
        ("anomaly", result.anomaly),
        ("numerator", result.numerator),
        ("variance_x", result.variance_x),
        ("variance_y", result.variance_y),
        ("sigma_x", result.sigma_x),
        ("sigma_y", result.sigma_y),
        ("overridden", result.overridden),
    ]
    if result.complex_rho is not None:
        items.append(("complex_rho", result.complex_rho))
    return section("correlation", items)


def k_sweep_block(rows: Sequence[Tuple[float, SpectralVerdict]]) -> List[str]:
    return csv_block(
        "k_sweep",
        ["k", "verdict", "min_nonforced", "negative_count"],
        [(k, v.verdict, v.min_nonforced, v.negative_count()) for k, v in rows],
    )


def scan_sections(report: ScanReport) -> List[str]:
    lines = section("scan", [
        ("trials", report.trials),
        ("evaluated", report.evaluated),
        ("skipped_disconnected", report.skipped_disconnected),
        ("injected", report.injected),
        ("failures", len(report.failures)),
        ("failure_rate", report.failure_rate),
    ])
    lines += csv_block(
        "failures",
        ["label", "family", "n", "p", "seed", "k", "min_nonforced", "negative_count"],
        [
            (f.label, f.family, f.n, f.p, f.seed, f.k, f.min_nonforced, f.negative_count)
            for f in report.failures
        ],
    )
    return lines


def render(title: str, config_items: Iterable[Tuple[str, Any]], *parts: List[str]) -> str:
    """Assemble a full report: header, configuration, then each part."""
    lines = [f"# netcorr {title} report", ""]
    lines += section("config", config_items)
    for part in parts:
        lines += part
    return "\n".join(lines).rstrip("\n") + "\n"


def emit(text: str, output: Optional[Path]) -> None:
    """Write ``text`` to ``output``, or to stdout when no path is given."""
    if output is None:
        print(text, end="")
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
