"""
Rate functionals for the secure PSM link.

Monte-Carlo mutual information for finite-alphabet inputs, closed-form
cut-off rates, and the three surrogate objectives used for antenna
selection. All exponential sums go through ``logsumexp``.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .numeric import frobenius_norm_sq, sample_complex_gaussian, spectral_norm_sq
from .precoding import compute_precoders, compute_whitening
from .system import distance_spectrum, select_rows, transmit_vectors

__all__ = [
    "Estimator",
    "RateEstimate",
    "mi_from_noise",
    "mi_bob_mc",
    "mi_eve_mc",
    "secrecy_rate_mc",
    "cutoff_bob",
    "cutoff_bob_pairs",
    "cutoff_eve",
    "cutoff_sr",
    "spectrum_rate_bob",
    "spectrum_rate_eve",
    "low_snr_objective",
    "high_snr_objective",
    "spectrum_sr_objective",
]

LN2 = np.log(2.0)


class Estimator(enum.Enum):
    MC = "mc"
    CUTOFF = "cutoff"
    LOW_SNR = "low_snr"
    HIGH_SNR_OBJ = "high_snr_obj"
    SPECTRUM = "spectrum"


@dataclass(frozen=True)
class RateEstimate:
    """A rate in bits per channel use.

    Closed-form estimators carry ``n_samples = 0`` and ``std_error = 0``.
    """

    value: float
    estimator: Estimator
    n_samples: int = 0
    std_error: float = 0.0


def _signal_points(effective, c, cfg):
    # rows: sqrt(rho1 Ps) * A @ (e_n s_m) for every transmit vector
    X = transmit_vectors(c, cfg.Nt)
    return np.sqrt(cfg.rho1 * cfg.Ps) * (X @ np.asarray(effective).T)


def mi_from_noise(effective, c, cfg, noise):
    """Finite-alphabet mutual information for ``y = A x + w``, ``w ~ CN(0, I)``.

    Parameters
    ----------
    effective : ndarray, shape (dim, Nt)
        Noise-normalized effective channel ``A``; the transmitted signal is
        scaled by ``sqrt(rho1 * Ps)`` inside.
    noise : ndarray, shape (n_samp, dim)
        Unit-variance noise draws, shared across all transmitted vectors.

    Returns
    -------
    RateEstimate
        ``std_error`` is the standard error of the per-draw terms.
    """
    U = _signal_points(effective, c, cfg)
    L = U.shape[0]
    diff = U[:, None, :] - U[None, :, :]
    dist = np.sum(diff.real**2 + diff.imag**2, axis=-1)
    # ||w||^2 - ||a + w||^2 = -||a||^2 - 2 Re(a^H w)
    cross = np.einsum("sd,ijd->sij", noise, diff.conj()).real
    lse = logsumexp(-dist[None] - 2.0 * cross, axis=2) / LN2
    per_draw = np.log2(L) - lse.mean(axis=1)
    n = per_draw.size
    se = float(per_draw.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return RateEstimate(float(per_draw.mean()), Estimator.MC, n, se)


def mi_bob_mc(ps, c, cfg, n_samp, rng):
    """Monte-Carlo mutual information at Bob after zero forcing."""
    if n_samp < 1:
        raise ValueError("n_samp must be >= 1")
    noise = sample_complex_gaussian(n_samp, cfg.Nt, 1.0, rng)
    A = (ps.beta_k / np.sqrt(cfg.sigma_b_sq)) * np.eye(cfg.Nt)
    return mi_from_noise(A, c, cfg, noise)


def mi_eve_mc(ew, c, cfg, n_samp, rng):
    """Monte-Carlo mutual information at Eve behind her whitening filter."""
    if n_samp < 1:
        raise ValueError("n_samp must be >= 1")
    noise = sample_complex_gaussian(n_samp, ew.Q.shape[0], 1.0, rng)
    return mi_from_noise(ew.Q, c, cfg, noise)


def secrecy_rate_mc(channel, p, cfg, c, n_samp, rng):
    """Clamped secrecy rate ``max(I_bob - I_eve, 0)`` for one realization.

    Bob's noise is drawn first, then Eve's, from the same generator.
    """
    ps = compute_precoders(select_rows(channel.H, p))
    ew = compute_whitening(channel.G, ps, cfg)
    bob = mi_bob_mc(ps, c, cfg, n_samp, rng)
    eve = mi_eve_mc(ew, c, cfg, n_samp, rng)
    return RateEstimate(
        max(bob.value - eve.value, 0.0),
        Estimator.MC,
        n_samp,
        float(np.hypot(bob.std_error, eve.std_error)),
    )


def _pairwise_cutoff(U):
    L = U.shape[0]
    diff = U[:, None, :] - U[None, :, :]
    dist = np.sum(diff.real**2 + diff.imag**2, axis=-1)
    value = -(logsumexp(-dist / 4.0) - 2.0 * np.log(L)) / LN2
    return float(np.clip(value, 0.0, np.log2(L)))


def _spectrum_rate(gain, spec, L):
    value = -logsumexp(-gain * spec.d, b=spec.f) / LN2
    return float(np.clip(value, 0.0, np.log2(L)))


def spectrum_rate_bob(beta_k, cfg, spec):
    """Bob's cut-off rate evaluated over the distance spectrum."""
    gain = cfg.rho1 * cfg.Ps * beta_k**2 / (4.0 * cfg.sigma_b_sq)
    return _spectrum_rate(gain, spec, cfg.L)


def spectrum_rate_eve(ew, cfg, spec):
    """Pessimistic (upper-bound) Eve rate with every pair gain set to ``||Q||_2^2``."""
    gain = cfg.rho1 * cfg.Ps * spectral_norm_sq(ew.Q) / 4.0
    return _spectrum_rate(gain, spec, cfg.L)


def cutoff_bob(beta_k, cfg, c):
    spec = distance_spectrum(c, cfg.Nt)
    return RateEstimate(spectrum_rate_bob(beta_k, cfg, spec), Estimator.CUTOFF)


def cutoff_bob_pairs(beta_k, cfg, c):
    """Bob's cut-off rate as the explicit sum over all ordered vector pairs."""
    A = (beta_k / np.sqrt(cfg.sigma_b_sq)) * np.eye(cfg.Nt)
    return RateEstimate(_pairwise_cutoff(_signal_points(A, c, cfg)), Estimator.CUTOFF)


def cutoff_eve(ew, cfg, c):
    return RateEstimate(_pairwise_cutoff(_signal_points(ew.Q, c, cfg)), Estimator.CUTOFF)


def cutoff_sr(channel, p, cfg, c):
    """Unclamped cut-off secrecy rate for pattern ``p``."""
    ps = compute_precoders(select_rows(channel.H, p))
    ew = compute_whitening(channel.G, ps, cfg)
    value = cutoff_bob(ps.beta_k, cfg, c).value - cutoff_eve(ew, cfg, c).value
    return RateEstimate(value, Estimator.CUTOFF)


def low_snr_objective(beta_k, ew, cfg):
    return beta_k**2 / cfg.sigma_b_sq - spectral_norm_sq(ew.Q)


def high_snr_objective(ew):
    """Eve's whitened signal energy ``||Q||_F^2``; selection minimizes it."""
    return frobenius_norm_sq(ew.Q)


def spectrum_sr_objective(beta_k, ew, cfg, spec):
    """Log-ratio of the spectrum sums for Eve and Bob, in bits."""
    eve_gain = cfg.rho1 * cfg.Ps * spectral_norm_sq(ew.Q) / 4.0
    bob_gain = cfg.rho1 * cfg.Ps * beta_k**2 / (4.0 * cfg.sigma_b_sq)
    num = logsumexp(-eve_gain * spec.d, b=spec.f)
    den = logsumexp(-bob_gain * spec.d, b=spec.f)
    return float((num - den) / LN2)
