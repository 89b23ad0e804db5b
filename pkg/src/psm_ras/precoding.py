"""
Zero-forcing precoder, null-space artificial-noise projector and the
eavesdropper's whitening filter for one selected sub-channel.
"""

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientChannel, SingularMatrix
from .numeric import as_complex_matrix, frobenius_norm_sq, hermitian_inverse, inv_sqrt_psd

__all__ = ["PrecoderSet", "EveWhitening", "compute_precoders", "compute_whitening"]

RANK_RTOL = 1e-10


@dataclass(frozen=True)
class PrecoderSet:
    """Signal precoder ``P_k`` (Na x Nt), its gain ``beta_k``, AN projector
    ``P_AN`` (Na x Na) and the AN normalization ``mu``."""

    P_k: np.ndarray
    beta_k: float
    P_AN: np.ndarray
    mu: float


@dataclass(frozen=True)
class EveWhitening:
    W: np.ndarray
    W_inv_sqrt: np.ndarray
    Q: np.ndarray


def compute_precoders(H_k):
    """Build the zero-forcing precoder and AN projector for ``H_k`` (Nt x Na).

    ``H_k P_k = beta_k I`` with ``tr(P_k P_k^H) = 1``, and ``P_AN`` is the
    orthogonal projector onto the null space of ``H_k`` scaled to unit
    Frobenius norm. A square ``H_k`` has an empty null space; then
    ``mu = 0`` and ``P_AN`` is the zero matrix.

    Raises
    ------
    RankDeficientChannel
        If the smallest singular value of ``H_k`` is not above ``1e-10``
        times the largest.
    """
    H_k = as_complex_matrix(H_k)
    Nt, Na = H_k.shape
    if Nt > Na:
        raise RankDeficientChannel(f"{Nt}x{Na} sub-channel cannot have full row rank")
    sv = np.linalg.svd(H_k, compute_uv=False)
    if sv[-1] <= RANK_RTOL * sv[0]:
        raise RankDeficientChannel(f"singular value ratio {sv[-1] / sv[0]:.3e}")
    Hh = H_k.conj().T
    try:
        gram_inv = hermitian_inverse(H_k @ Hh)
    except SingularMatrix as exc:
        raise RankDeficientChannel(str(exc)) from exc
    pinv = Hh @ gram_inv
    beta_k = float(np.sqrt(1.0 / np.trace(gram_inv).real))
    if Na == Nt:
        return PrecoderSet(beta_k * pinv, beta_k, np.zeros((Na, Na), dtype=complex), 0.0)
    projector = np.eye(Na) - pinv @ H_k
    mu = float(np.sqrt(frobenius_norm_sq(projector)))
    return PrecoderSet(beta_k * pinv, beta_k, projector / mu, mu)


def compute_whitening(G, ps, cfg):
    """Eve's interference-plus-noise covariance ``W``, ``W^{-1/2}`` and
    the effective matrix ``Q = W^{-1/2} G P_k``."""
    G = as_complex_matrix(G)
    GP = G @ ps.P_AN
    W = cfg.rho2 * cfg.Ps * (GP @ GP.conj().T) + cfg.sigma_e_sq * np.eye(G.shape[0])
    W_inv_sqrt = inv_sqrt_psd(W)
    return EveWhitening(W=W, W_inv_sqrt=W_inv_sqrt, Q=W_inv_sqrt @ G @ ps.P_k)
