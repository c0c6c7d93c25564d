"""Small dense Hermitian linear algebra.

Every matrix handled here is at most 8x8, so everything is a thin wrapper
around ``numpy.linalg.eigh`` plus the validation and the zero-eigenvalue
conventions the divergence code relies on.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ._config import get_tolerances
from .errors import CapabilityError, NotPSDError, ValidationError


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray   # real, nonincreasing
    eigenvectors: np.ndarray  # columns, orthonormal

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_hermitian(m, atol: float | None = None) -> np.ndarray:
    """Return ``m`` as a complex square array after checking Hermiticity."""
    tol = get_tolerances()
    atol = tol.hermitian if atol is None else atol
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > tol.max_dim:
        raise CapabilityError(f"dimension {m.shape[0]} exceeds supported maximum {tol.max_dim}")
    err = np.max(np.abs(m - m.conj().T))
    if err > atol:
        raise ValidationError(f"matrix is not Hermitian (max |m - m^H| = {err:.3g})")
    return m


def eig(m) -> EigenSystem:
    m = as_hermitian(m)
    w, v = np.linalg.eigh(m)
    return EigenSystem(w[::-1].copy(), v[:, ::-1].copy())


def min_eigenvalue(m) -> float:
    return float(np.linalg.eigvalsh(as_hermitian(m))[0])


def clamp_spectrum(eigenvalues: np.ndarray) -> np.ndarray:
    """Zero out eigenvalues that are numerically zero; reject clearly negative ones."""
    tol = get_tolerances()
    w = np.asarray(eigenvalues, dtype=float)
    if w.size and w.min() < -tol.psd:
        raise NotPSDError(f"matrix is not PSD (min eigenvalue {w.min():.3g})")
    scale = np.max(np.abs(w)) if w.size else 0.0
    out = w.copy()
    out[w <= tol.eig_clamp * scale] = 0.0
    return out


def spectral_power(eigenvalues: np.ndarray, s: float) -> np.ndarray:
    """Elementwise ``lambda**s`` with the support convention ``0**0 = 0``."""
    w = np.asarray(eigenvalues, dtype=float)
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = w[pos] ** s
    return out


def matrix_power(m, s: float) -> np.ndarray:
    """``m**s`` for PSD ``m`` and ``s`` in [0, 1].

    Eigenvalues under the clamp threshold are exact zeros, and ``0**0`` is
    taken as 0, so ``matrix_power(m, 0)`` is the projector onto the support.
    """
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"exponent must lie in [0, 1], got {s}")
    es = eig(m)
    w = spectral_power(clamp_spectrum(es.eigenvalues), s)
    return EigenSystem(w, es.eigenvectors).reconstruct()


def support_projector(m) -> np.ndarray:
    return matrix_power(m, 0.0)


def psd_eig(m) -> EigenSystem:
    """Eigen-decomposition of a PSD matrix with its spectrum clamped."""
    es = eig(m)
    return EigenSystem(clamp_spectrum(es.eigenvalues), es.eigenvectors)
