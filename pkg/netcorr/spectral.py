"""Spectral certificates for weight and distance matrices.

A weight matrix W yields a real, finite network correlation for every pair
of non-constant signals exactly when W is positive definite on the
subspace of zero-sum vectors. The test:

  1. double-centre: W_hat = J W J, J = I - (1/n) 1 1^T
  2. take the eigenvalues of W_hat
  3. one eigenvalue is forced to zero by the centring (the constant vector
     is in the kernel); W is valid iff the other n - 1 are strictly positive.

A distance matrix D is of negative type when -D_hat has no strictly
negative eigenvalue beyond the forced zero. For such D, exp(-k D) is
positive definite for every k > 0, and only for such D.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Iterable, List, Literal, Optional, Tuple

import numpy as np
import scipy.linalg

from netcorr.distance import DistanceMatrix, check_square_symmetric
from netcorr.weights import WeightMatrix, exp_weight

logger = logging.getLogger(__name__)

# Zero threshold is DEFAULT_RTOL * max(1, max |eigenvalue|).
DEFAULT_RTOL = 1e-9

# The forced-zero eigenvector is only checked against the constant
# direction when its eigenvalue is at least this (relative) far from the rest.
_SEPARATION_RTOL = 1e-6
_MIN_CONSTANT_OVERLAP = 0.99

Verdict = Literal["valid", "invalid"]
CertificateKind = Literal["positive_definite", "negative_type"]


class AsymmetricMatrixError(ValueError):
    """Input matrix is not square/symmetric within tolerance."""


class CertificateConsistencyError(RuntimeError):
    """The forced-zero eigenvalue is not zero. Centring is broken; not a data error."""


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues ascending, with orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class SpectralVerdict:
    """Eigenvalue evidence for, and the decision of, one certification.

    ``eigenvalues`` are those of the centred matrix (W_hat, or -D_hat for
    the negative-type test), ascending. ``tolerance`` is the absolute
    zero-threshold actually applied. ``digest`` fingerprints the certified
    matrix so a verdict cannot be reused for a different W.
    """

    eigenvalues: Tuple[float, ...]
    zero_index: int
    min_nonforced: float
    verdict: Verdict
    tolerance: float
    kind: CertificateKind
    provenance: str
    digest: str

    @property
    def is_valid(self) -> bool:
        return self.verdict == "valid"

    @property
    def forced_zero(self) -> float:
        return self.eigenvalues[self.zero_index]

    def negative_count(self) -> int:
        """Non-forced eigenvalues below -tolerance."""
        return sum(
            1 for i, lam in enumerate(self.eigenvalues)
            if i != self.zero_index and lam < -self.tolerance
        )


# ---------------------------------------------------------------------------
# Linear-algebra primitives
# ---------------------------------------------------------------------------


def matrix_digest(values: np.ndarray) -> str:
    """Stable fingerprint of a float matrix (shape + raw float64 bytes)."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    h = hashlib.sha256()
    h.update(str(arr.shape).encode())
    h.update(arr.tobytes())
    return h.hexdigest()[:16]


def double_center(m: np.ndarray) -> np.ndarray:
    """J m J, computed entrywise as m_ij - rowmean_i - colmean_j + grandmean.

    Raises:
        AsymmetricMatrixError: non-square or non-symmetric input, or n < 2.
    """
    m = np.asarray(m, dtype=float)
    check_square_symmetric(m, "matrix to centre", error=AsymmetricMatrixError)
    if m.shape[0] < 2:
        raise AsymmetricMatrixError("double_center needs n >= 2")
    row = m.mean(axis=1)
    col = m.mean(axis=0)
    centred = m - row[:, None] - col[None, :] + m.mean()
    return (centred + centred.T) / 2.0


def eig_sym(m: np.ndarray) -> EigenDecomposition:
    """Full symmetric eigendecomposition, eigenvalues ascending.

    Raises:
        AsymmetricMatrixError: relative asymmetry above 1e-10.
    """
    m = np.asarray(m, dtype=float)
    check_square_symmetric(m, "matrix", error=AsymmetricMatrixError)
    values, vectors = scipy.linalg.eigh((m + m.T) / 2.0)
    return EigenDecomposition(values=values, vectors=vectors)


def zero_threshold(eigenvalues: np.ndarray, rtol: float = DEFAULT_RTOL) -> float:
    """Absolute zero-threshold: rtol * max(1, max |lambda|)."""
    if not rtol > 0:
        raise ValueError(f"tolerance must be > 0, got {rtol!r}")
    return rtol * max(1.0, float(np.max(np.abs(eigenvalues))))


def _forced_zero(eig: EigenDecomposition, threshold: float) -> int:
    """Index of the eigenvalue the centring forces to zero.

    Picked by smallest magnitude. When that eigenvalue is well separated
    from the rest, its eigenvector must be the constant direction.
    """
    lam = eig.values
    zi = int(np.argmin(np.abs(lam)))
    if abs(lam[zi]) > threshold:
        raise CertificateConsistencyError(
            f"forced-zero eigenvalue {lam[zi]:.3g} exceeds tolerance {threshold:.3g}"
        )
    others = np.delete(lam, zi)
    scale = max(1.0, float(np.max(np.abs(lam))))
    if others.size and float(np.min(np.abs(others - lam[zi]))) > _SEPARATION_RTOL * scale:
        n = len(lam)
        overlap = abs(float(eig.vectors[:, zi].sum())) / np.sqrt(n)
        if overlap < _MIN_CONSTANT_OVERLAP:
            raise CertificateConsistencyError(
                f"forced-zero eigenvector overlaps the constant vector by only {overlap:.3f}"
            )
    return zi


def _certify(
    centred: np.ndarray,
    rtol: float,
    kind: CertificateKind,
    provenance: str,
    digest: str,
) -> SpectralVerdict:
    eig = eig_sym(centred)
    threshold = zero_threshold(eig.values, rtol)
    zi = _forced_zero(eig, threshold)
    min_nonforced = float(np.min(np.delete(eig.values, zi)))
    if kind == "positive_definite":
        ok = min_nonforced > threshold
    else:
        ok = min_nonforced >= -threshold
    verdict = SpectralVerdict(
        eigenvalues=tuple(float(v) for v in eig.values),
        zero_index=zi,
        min_nonforced=min_nonforced,
        verdict="valid" if ok else "invalid",
        tolerance=threshold,
        kind=kind,
        provenance=provenance,
        digest=digest,
    )
    logger.debug(f"{kind} certificate for {provenance}: {verdict.verdict}, min non-forced {min_nonforced:.6g}")
    return verdict


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def certify_weight(w: WeightMatrix, tol: float = DEFAULT_RTOL) -> SpectralVerdict:
    """Is ``w`` positive definite on the zero-sum subspace?

    Valid iff every eigenvalue of W_hat other than the forced zero exceeds
    ``tol * max(1, max |lambda|)``.
    """
    return _certify(
        double_center(w.values),
        tol,
        "positive_definite",
        w.describe(),
        matrix_digest(w.values),
    )


def certify_negative_type(d: DistanceMatrix, tol: float = DEFAULT_RTOL) -> SpectralVerdict:
    """Is ``d`` of negative type, i.e. -D_hat positive semidefinite?

    Semidefinite, not definite: a negative-type metric may contribute
    further zero eigenvalues (a line metric, for instance).
    """
    return _certify(
        -double_center(d.values),
        tol,
        "negative_type",
        f"{d.kind} distances",
        matrix_digest(d.values),
    )


def worst_direction(w: WeightMatrix) -> np.ndarray:
    """Unit zero-sum vector x minimising x^T W x.

    This is the eigenvector of W_hat for its smallest non-forced eigenvalue;
    when ``w`` is invalid it is the signal with the most negative network
    variance. Sign fixed so the largest-magnitude entry is positive.
    """
    eig = eig_sym(double_center(w.values))
    zi = _forced_zero(eig, zero_threshold(eig.values))
    candidates = [i for i in range(len(eig.values)) if i != zi]
    i = min(candidates, key=lambda j: eig.values[j])
    v = eig.vectors[:, i].copy()
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return v


def log_k_grid(lo: float = 1e-3, hi: float = 10.0, num: int = 41) -> np.ndarray:
    """Logarithmically spaced scales in [lo, hi]."""
    if not 0 < lo <= hi:
        raise ValueError(f"need 0 < lo <= hi, got lo={lo!r}, hi={hi!r}")
    return np.geomspace(lo, hi, num)


def sweep_k(
    d: DistanceMatrix,
    ks: Optional[Iterable[float]] = None,
    tol: float = DEFAULT_RTOL,
) -> List[Tuple[float, SpectralVerdict]]:
    """Certify exp(-k d) for every k in ``ks`` (default ``log_k_grid()``)."""
    grid = log_k_grid() if ks is None else ks
    return [(float(k), certify_weight(exp_weight(d, float(k)), tol)) for k in grid]
