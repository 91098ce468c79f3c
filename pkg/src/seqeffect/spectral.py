"""Dense Hermitian matrix kernel.

Eigendecomposition, PSD square roots, effect/density/projection predicates
and the projection lattice operations (meet, join) used by the quantum
instance.  Everything here is a pure function of small dense matrices
(1 <= d <= 64); ``numpy.linalg.eigh`` does the heavy lifting.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np

__all__ = [
    "SpectralError",
    "NonHermitian",
    "NotPSD",
    "NotProjection",
    "ConvergenceFailure",
    "ClipWarning",
    "EigenDecomposition",
    "MAX_DIM",
    "as_matrix",
    "hermitize",
    "eig_hermitian",
    "sqrt_psd",
    "clip_spectrum",
    "clipped_eig",
    "is_hermitian",
    "is_effect",
    "is_density",
    "is_projection",
    "kernel_projector",
    "meet_projections",
    "join_projections",
    "frobenius",
]

MAX_DIM = 64

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-9
KERNEL_TOL = 1e-8
CLIP_WARN = 1e-6


class SpectralError(ValueError):
    """Base class for numeric kernel failures."""


class NonHermitian(SpectralError):
    pass


class NotPSD(SpectralError):
    pass


class NotProjection(SpectralError):
    pass


class ConvergenceFailure(SpectralError):
    pass


class ClipWarning(RuntimeWarning):
    """Emitted when clipping moved an eigenvalue by more than 1e-6."""


class EigenDecomposition(NamedTuple):
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite square complex array of supported size."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not 1 <= arr.shape[0] <= MAX_DIM:
        raise ValueError(f"dimension {arr.shape[0]} outside 1..{MAX_DIM}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def frobenius(m) -> float:
    return float(np.linalg.norm(m, "fro"))


def hermitize(m) -> np.ndarray:
    """Return ``(M + M^dagger) / 2``."""
    arr = as_matrix(m)
    return (arr + arr.conj().T) / 2


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    arr = as_matrix(m)
    return frobenius(arr - arr.conj().T) <= tol * max(1.0, frobenius(arr))


def eig_hermitian(m, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    NonHermitian
        If ``M`` departs from its adjoint by more than ``tol`` (relative to
        ``max(1, ||M||_F)``).
    ConvergenceFailure
        If LAPACK does not converge.
    """
    arr = as_matrix(m)
    if not is_hermitian(arr, tol):
        raise NonHermitian("matrix is not Hermitian")
    try:
        w, v = np.linalg.eigh((arr + arr.conj().T) / 2)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailure(str(exc)) from exc
    return EigenDecomposition(w, v)


def _from_spectrum(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    out = (v * w) @ v.conj().T
    return (out + out.conj().T) / 2


def sqrt_psd(m, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-tol, 0)`` are treated as rounding noise and set to
    zero; anything more negative raises :class:`NotPSD`.
    """
    w, v = eig_hermitian(m)
    if w[0] < -tol:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} below -{tol:g}")
    return _from_spectrum(v, np.sqrt(np.clip(w, 0.0, None)))


def clipped_eig(m, lo: float = 0.0, hi: float = 1.0):
    """Hermitize, clip the spectrum into ``[lo, hi]`` and keep the eigensystem.

    Returns ``(matrix, eigenvalues, eigenvectors)`` of the clipped matrix.
    A :class:`ClipWarning` is issued when any eigenvalue moves by more than
    1e-6, which signals real numeric degradation rather than rounding.
    """
    h = hermitize(m)
    w, v = np.linalg.eigh(h)
    if w[0] >= lo and w[-1] <= hi:
        return h, w, v
    clipped = np.clip(w, lo, hi)
    moved = float(np.max(np.abs(clipped - w)))
    if moved > CLIP_WARN:
        warnings.warn(f"spectrum clipped by {moved:.3e}", ClipWarning, stacklevel=3)
    return _from_spectrum(v, clipped), clipped, v


def clip_spectrum(m, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    """Hermitize and clip the spectrum into ``[lo, hi]``."""
    return clipped_eig(m, lo, hi)[0]


def is_effect(m, tol: float = PSD_TOL) -> bool:
    """Hermitian with spectrum inside ``[-tol, 1 + tol]``."""
    arr = as_matrix(m)
    if not is_hermitian(arr):
        return False
    w = np.linalg.eigvalsh(hermitize(arr))
    return bool(w[0] >= -tol and w[-1] <= 1 + tol)


def is_density(m, tol: float = PSD_TOL) -> bool:
    """Hermitian PSD with unit trace (both within ``tol``)."""
    arr = as_matrix(m)
    if not is_hermitian(arr):
        return False
    w = np.linalg.eigvalsh(hermitize(arr))
    return bool(w[0] >= -tol and abs(np.trace(arr).real - 1.0) <= tol)


def is_projection(m, tol: float = KERNEL_TOL) -> bool:
    arr = as_matrix(m)
    return is_effect(arr, tol) and frobenius(arr @ arr - arr) <= tol


def kernel_projector(m, tol: float = KERNEL_TOL) -> np.ndarray:
    """Orthogonal projection onto the (numerical) kernel of a PSD matrix.

    Eigenvalues at most ``tol * max(1, lambda_max)`` count as zero, so a
    full-rank input gives the zero matrix.
    """
    w, v = eig_hermitian(m)
    cutoff = tol * max(1.0, float(w[-1]))
    basis = v[:, w <= cutoff]
    return hermitize(basis @ basis.conj().T)


def _require_projection(p, name: str) -> np.ndarray:
    arr = as_matrix(p)
    if not is_projection(arr):
        raise NotProjection(f"{name} is not an orthogonal projection")
    return hermitize(arr)


def meet_projections(p, q) -> np.ndarray:
    """Projection onto ``range(P) & range(Q)``.

    The intersection of ranges is the common kernel of ``I - P`` and
    ``I - Q``, i.e. the kernel of their (PSD) sum.
    """
    p = _require_projection(p, "P")
    q = _require_projection(q, "Q")
    eye = np.eye(p.shape[0])
    if p.shape != q.shape:
        raise ValueError("dimension mismatch")
    return kernel_projector((eye - p) + (eye - q))


def join_projections(p, q) -> np.ndarray:
    """Projection onto ``range(P) + range(Q)``, by De Morgan from the meet."""
    p = _require_projection(p, "P")
    q = _require_projection(q, "Q")
    eye = np.eye(p.shape[0])
    return eye - meet_projections(eye - p, eye - q)
