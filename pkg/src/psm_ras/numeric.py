"""
Small dense complex linear algebra used throughout the package.

Matrices are plain two-dimensional :class:`numpy.ndarray` objects with a
complex dtype. Every function here is pure; random draws take an explicit
:class:`numpy.random.Generator`.
"""

import numpy as np

from .errors import MalformedMatrix, NotHermitian, SingularMatrix

__all__ = [
    "as_complex_matrix",
    "hermitian_inverse",
    "inv_sqrt_psd",
    "spectral_norm_sq",
    "frobenius_norm_sq",
    "sample_complex_gaussian",
]

HERMITIAN_RTOL = 1e-10
EIG_RATIO_MIN = 1e-12


def as_complex_matrix(A):
    """Return `A` as a finite 2-D complex array, raising MalformedMatrix otherwise."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.size == 0:
        raise MalformedMatrix(f"expected a nonempty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise MalformedMatrix("matrix has non-finite entries")
    return A


def _hermitian_eig(A):
    A = as_complex_matrix(A)
    n, m = A.shape
    if n != m:
        raise MalformedMatrix(f"expected a square matrix, got shape {A.shape}")
    scale = np.linalg.norm(A)
    if np.linalg.norm(A - A.conj().T) > HERMITIAN_RTOL * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    lam, V = np.linalg.eigh(A)
    lam_max = lam[-1]
    if lam_max <= 0 or lam[0] <= EIG_RATIO_MIN * lam_max:
        raise SingularMatrix(
            f"eigenvalue ratio {lam[0] / lam_max if lam_max > 0 else 0.0:.3e} "
            f"below {EIG_RATIO_MIN:g}"
        )
    return np.maximum(lam, EIG_RATIO_MIN * lam_max), V


def hermitian_inverse(A):
    """Inverse of a Hermitian positive-definite matrix.

    Raises
    ------
    NotHermitian
        If ``A`` differs from its conjugate transpose by more than
        ``1e-10`` relative (Frobenius).
    SingularMatrix
        If the smallest eigenvalue is not above ``1e-12`` times the largest.
    """
    lam, V = _hermitian_eig(A)
    return (V / lam) @ V.conj().T


def inv_sqrt_psd(W):
    """Hermitian inverse square root ``W^{-1/2}`` via eigendecomposition."""
    lam, V = _hermitian_eig(W)
    return (V / np.sqrt(lam)) @ V.conj().T


def spectral_norm_sq(A):
    """Largest squared singular value of `A`.

    Computed as the top eigenvalue of the smaller of ``A^H A`` and ``A A^H``.
    """
    A = as_complex_matrix(A)
    gram = A.conj().T @ A if A.shape[0] >= A.shape[1] else A @ A.conj().T
    return max(float(np.linalg.eigvalsh(gram)[-1]), 0.0)


def frobenius_norm_sq(A):
    A = as_complex_matrix(A)
    return float(np.sum(A.real**2 + A.imag**2))


def sample_complex_gaussian(rows, cols, variance, rng):
    """I.i.d. circularly-symmetric ``CN(0, variance)`` entries.

    Real and imaginary parts are independent ``N(0, variance / 2)``. The
    output is a deterministic function of the generator state.
    """
    if variance < 0:
        raise ValueError("variance must be nonnegative")
    parts = rng.standard_normal((2, rows, cols))
    return np.sqrt(variance / 2.0) * (parts[0] + 1j * parts[1])
