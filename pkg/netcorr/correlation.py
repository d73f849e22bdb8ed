"""Classical and network Pearson correlation.

    rho(x, y)    = sum_ij I_ij xh_i yh_j / (sigma_x sigma_y)
    rho_W(x, y)  = sum_ij W_ij xh_i yh_j / (sigma_x,W sigma_y,W)
    sigma_x,W^2  = sum_ij W_ij xh_i xh_j

where xh = x - mean(x). Both variances are taken over the centred signals,
so they are quadratic forms on the zero-sum subspace: they are strictly
positive for every non-constant signal exactly when W is certified valid.

``network_pearson`` takes the verdict as an argument instead of recomputing
it, so one eigendecomposition serves any number of signal pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from netcorr.spectral import CertificateConsistencyError, SpectralVerdict, matrix_digest
from netcorr.weights import WeightMatrix

logger = logging.getLogger(__name__)

IMAGINARY = "imaginary correlation"
INFINITE = "infinite correlation"
OUT_OF_RANGE = "out-of-range correlation"

# Negative quadratic forms this small relative to sum |W_ij xh_i xh_j| are rounding.
_ROUNDING_RTOL = 1e-12


class SignalError(ValueError):
    """Signal does not fit the graph: wrong length, labels, or non-finite values."""


class ZeroVarianceError(ValueError):
    """A constant signal; its centred version is zero and the ratio divides by zero."""


class NegativeVarianceError(ValueError):
    """An uncertified W gave a negative network variance (the correlation would be imaginary)."""

    def __init__(self, variance: float):
        self.variance = variance
        super().__init__(
            f"negative variance {variance:.6g}: W is not positive definite on zero-sum "
            f"vectors, so the network correlation would be imaginary"
        )


class InvalidWeightError(ValueError):
    """``network_pearson`` was handed a W whose certificate is invalid or does not match."""


@dataclass(frozen=True, eq=False)
class Signal:
    """A real value per node, in the graph's node order."""

    values: np.ndarray
    nodes: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise SignalError("signal values must be finite")
        nodes = tuple(str(v) for v in self.nodes) or tuple(str(i) for i in range(len(values)))
        if len(nodes) != len(values):
            raise SignalError(f"signal has {len(values)} values but {len(nodes)} node labels")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "nodes", nodes)

    @property
    def n(self) -> int:
        return len(self.values)

    def is_constant(self) -> bool:
        return bool(np.ptp(self.values) == 0.0)


@dataclass(frozen=True)
class CorrelationResult:
    """rho plus the quantities that justify it.

    On the certified path ``rho`` is real, ``anomaly`` is None and
    rho * sigma_x * sigma_y == numerator. The unsafe override may instead
    yield ``anomaly`` = "imaginary correlation" (a negative variance;
    ``rho`` is None and ``complex_rho`` holds the value), "infinite
    correlation" (a zero variance) or "out-of-range correlation" (real but
    |rho| > 1).
    """

    rho: Optional[float]
    numerator: float
    variance_x: float
    variance_y: float
    verdict_used: SpectralVerdict
    anomaly: Optional[str] = None
    complex_rho: Optional[complex] = None
    overridden: bool = False

    @property
    def sigma_x(self) -> Optional[float]:
        return float(np.sqrt(self.variance_x)) if self.variance_x >= 0 else None

    @property
    def sigma_y(self) -> Optional[float]:
        return float(np.sqrt(self.variance_y)) if self.variance_y >= 0 else None

    @property
    def is_real(self) -> bool:
        return self.rho is not None


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------


def _as_values(x) -> np.ndarray:
    return x.values if isinstance(x, Signal) else np.asarray(x, dtype=float)


def center_signal(x: Signal) -> Signal:
    """x - mean(x)."""
    return Signal(values=x.values - x.values.mean(), nodes=x.nodes)


def weighted_sum(w: np.ndarray, a, b) -> float:
    """sum_ij W_ij a_i b_j (no centring, no checks)."""
    return float(_as_values(a) @ np.asarray(w) @ _as_values(b))


def naive_double_sum(w: np.ndarray, a, b) -> float:
    """The same double sum as an explicit loop. Slow; kept as a reference."""
    a, b, w = _as_values(a), _as_values(b), np.asarray(w)
    total = 0.0
    for i in range(len(a)):
        for j in range(len(b)):
            total += w[i, j] * a[i] * b[j]
    return total


def _check_pair(x: Signal, y: Signal) -> None:
    if x.n != y.n:
        raise SignalError(f"signals differ in length ({x.n} vs {y.n})")
    if x.n < 2:
        raise SignalError("correlation needs at least 2 nodes")


def _check_fits(x: Signal, w: WeightMatrix) -> None:
    if x.n != w.n:
        raise SignalError(f"signal has {x.n} values but W is {w.n}x{w.n}")
    if x.nodes != w.nodes:
        raise SignalError("signal node order does not match the weight matrix")


def _verdict_covers(verdict: Optional[SpectralVerdict], w: WeightMatrix) -> bool:
    return (
        verdict is not None
        and verdict.kind == "positive_definite"
        and verdict.is_valid
        and verdict.digest == matrix_digest(w.values)
    )


def _cross(w: WeightMatrix, xh: np.ndarray, yh: np.ndarray) -> float:
    """Numerator, evaluated symmetrically so swapping x and y gives the identical float."""
    return 0.5 * (weighted_sum(w.values, xh, yh) + weighted_sum(w.values, yh, xh))


def _quadratic_form(w: WeightMatrix, xh: np.ndarray) -> float:
    """xh^T W xh, with rounding-level negatives snapped to zero."""
    q = weighted_sum(w.values, xh, xh)
    if q < 0:
        floor = _ROUNDING_RTOL * float(np.abs(xh) @ np.abs(w.values) @ np.abs(xh))
        if q >= -floor:
            return 0.0
    return q


# ---------------------------------------------------------------------------
# Correlations
# ---------------------------------------------------------------------------


def pearson(x: Signal, y: Signal) -> float:
    """Classical Pearson correlation.

    Raises:
        ZeroVarianceError: either signal is constant.
    """
    _check_pair(x, y)
    for name, s in (("x", x), ("y", y)):
        if s.is_constant():
            raise ZeroVarianceError(f"zero variance: signal {name} is constant")
    xh = center_signal(x).values
    yh = center_signal(y).values
    return float(xh @ yh / (np.sqrt(xh @ xh) * np.sqrt(yh @ yh)))


def network_variance(x: Signal, w: WeightMatrix, verdict: Optional[SpectralVerdict] = None) -> float:
    """sum_ij W_ij xh_i xh_j, the squared network standard deviation.

    Raises:
        NegativeVarianceError: the form is negative and ``verdict`` does not
            certify ``w`` (carries the value in ``.variance``).
        CertificateConsistencyError: the form is negative although
            ``verdict`` certifies ``w``.
    """
    _check_fits(x, w)
    q = _quadratic_form(w, center_signal(x).values)
    if q < 0:
        if _verdict_covers(verdict, w):
            raise CertificateConsistencyError(
                f"network variance {q:.6g} < 0 for a W certified positive definite"
            )
        raise NegativeVarianceError(q)
    return q


def network_pearson(
    x: Signal,
    y: Signal,
    w: WeightMatrix,
    verdict: SpectralVerdict,
    unsafe_override: bool = False,
) -> CorrelationResult:
    """Network Pearson correlation of ``x`` and ``y`` under ``w``.

    ``verdict`` must be ``certify_weight(w)`` and valid. With
    ``unsafe_override`` the value is computed anyway and any failure is
    reported in ``anomaly`` rather than raised; use it only to demonstrate
    what an invalid W does.

    Raises:
        InvalidWeightError: ``verdict`` is invalid or was issued for another matrix.
        ZeroVarianceError: a constant signal (division by zero).
    """
    _check_pair(x, y)
    _check_fits(x, w)
    _check_fits(y, w)

    if not unsafe_override:
        if verdict.digest != matrix_digest(w.values):
            raise InvalidWeightError("verdict was issued for a different weight matrix")
        if not verdict.is_valid or verdict.kind != "positive_definite":
            raise InvalidWeightError(
                f"W ({verdict.provenance}) is not positive definite on zero-sum vectors "
                f"(min eigenvalue {verdict.min_nonforced:.6g}); the correlation may be "
                f"imaginary, infinite or outside [-1, 1]"
            )
        for name, s in (("x", x), ("y", y)):
            if s.is_constant():
                raise ZeroVarianceError(f"division by zero: signal {name} is constant")
        return _certified(x, y, w, verdict)

    logger.warning(f"Computing network correlation without a valid certificate ({verdict.verdict})")
    return _overridden(x, y, w, verdict)


def _certified(x: Signal, y: Signal, w: WeightMatrix, verdict: SpectralVerdict) -> CorrelationResult:
    xh = center_signal(x).values
    yh = center_signal(y).values
    vx = network_variance(x, w, verdict)
    vy = network_variance(y, w, verdict)
    if vx <= 0 or vy <= 0:
        raise CertificateConsistencyError("zero network variance for a non-constant signal under a certified W")
    numerator = _cross(w, xh, yh)
    rho = numerator / (np.sqrt(vx) * np.sqrt(vy))
    return CorrelationResult(
        rho=float(rho),
        numerator=numerator,
        variance_x=vx,
        variance_y=vy,
        verdict_used=verdict,
    )


def _overridden(x: Signal, y: Signal, w: WeightMatrix, verdict: SpectralVerdict) -> CorrelationResult:
    xh = center_signal(x).values
    yh = center_signal(y).values
    vx = _quadratic_form(w, xh)
    vy = _quadratic_form(w, yh)
    numerator = _cross(w, xh, yh)
    common = dict(numerator=numerator, variance_x=vx, variance_y=vy, verdict_used=verdict, overridden=True)

    if vx < 0 or vy < 0:
        z = numerator / (np.emath.sqrt(vx) * np.emath.sqrt(vy))
        return CorrelationResult(rho=None, anomaly=IMAGINARY, complex_rho=complex(z), **common)
    if vx == 0 or vy == 0:
        return CorrelationResult(rho=None, anomaly=INFINITE, **common)
    rho = float(numerator / (np.sqrt(vx) * np.sqrt(vy)))
    return CorrelationResult(rho=rho, anomaly=OUT_OF_RANGE if abs(rho) > 1 + 1e-12 else None, **common)


def correlate_many(
    pairs: Sequence[Tuple[Signal, Signal]],
    w: WeightMatrix,
    verdict: SpectralVerdict,
) -> list:
    """``network_pearson`` over many pairs against one certified W."""
    return [network_pearson(x, y, w, verdict) for x, y in pairs]
