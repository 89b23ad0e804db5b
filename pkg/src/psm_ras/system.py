"""
System configuration, constellations, distance spectra, fading channels and
receive-antenna pattern enumeration.
"""

from dataclasses import dataclass, field, replace
from itertools import combinations
from math import comb, isqrt

import numpy as np

from .errors import IndexOutOfRange, InvalidConfig, InvalidDimensions, UnsupportedOrder
from .numeric import as_complex_matrix, sample_complex_gaussian

__all__ = [
    "SystemConfig",
    "Constellation",
    "DistanceSpectrum",
    "SelectionPattern",
    "ChannelPair",
    "build_constellation",
    "transmit_vectors",
    "distance_spectrum",
    "enumerate_patterns",
    "generate_channels",
    "select_rows",
    "snr_to_noise_var",
]

DISTANCE_GROUP_ATOL = 1e-9


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


def snr_to_noise_var(snr_db, Ps=1.0):
    """Noise variance giving ``10 log10(Ps / sigma^2) == snr_db``."""
    return Ps / 10.0 ** (snr_db / 10.0)


@dataclass(frozen=True)
class SystemConfig:
    """Scalar parameters of the secure PSM link.

    ``Nt`` defaults to the largest power of two not exceeding ``Nb``.
    ``rho2`` is always derived as ``1 - rho1``.
    """

    Na: int
    Nb: int
    Ne: int
    Nt: int | None = None
    M: int = 4
    Ps: float = 1.0
    rho1: float = 0.5
    sigma_b_sq: float = 1.0
    sigma_e_sq: float = 1.0

    def __post_init__(self):
        if self.Nt is None:
            if self.Nb < 1:
                raise InvalidConfig("Nb must be positive")
            object.__setattr__(self, "Nt", 1 << (self.Nb.bit_length() - 1))
        for name in ("Na", "Nb", "Ne", "Nt", "M"):
            if int(getattr(self, name)) < 1:
                raise InvalidConfig(f"{name} must be a positive integer")
        if not _is_pow2(self.Nt):
            raise InvalidConfig(f"Nt={self.Nt} is not a power of two")
        if self.Nt > self.Nb:
            raise InvalidConfig(f"Nt={self.Nt} exceeds Nb={self.Nb}")
        if self.Nt > self.Na:
            raise InvalidConfig(f"Nt={self.Nt} exceeds Na={self.Na}; zero forcing needs Na >= Nt")
        if not _is_pow2(self.M):
            raise InvalidConfig(f"M={self.M} is not a power of two")
        if not 0.0 <= self.rho1 <= 1.0:
            raise InvalidConfig("rho1 must lie in [0, 1]")
        if self.Ps <= 0:
            raise InvalidConfig("Ps must be positive")
        if self.sigma_b_sq <= 0 or self.sigma_e_sq <= 0:
            raise InvalidConfig("noise variances must be positive")

    @property
    def rho2(self):
        return 1.0 - self.rho1

    @property
    def K(self):
        """Number of receive-antenna patterns."""
        return comb(self.Nb, self.Nt)

    @property
    def L(self):
        """Number of distinct transmit vectors, ``M * Nt``."""
        return self.M * self.Nt

    def with_snr_db(self, snr_db):
        """Copy with ``sigma_b^2 = sigma_e^2`` set from ``snr_db`` relative to ``Ps``."""
        var = snr_to_noise_var(snr_db, self.Ps)
        return replace(self, sigma_b_sq=var, sigma_e_sq=var)


@dataclass(frozen=True)
class Constellation:
    symbols: np.ndarray

    @property
    def M(self):
        return len(self.symbols)


def build_constellation(M, family="psk"):
    """Unit-average-energy PSK or square-QAM alphabet.

    QPSK is anchored at ``pi / 4``; other PSK orders start at angle 0.
    """
    if not _is_pow2(M):
        raise UnsupportedOrder(f"M={M} is not a power of two")
    family = family.lower()
    if family == "psk":
        offset = np.pi / 4 if M == 4 else 0.0
        symbols = np.exp(1j * (2 * np.pi * np.arange(M) / M + offset))
    elif family == "qam":
        side = isqrt(M)
        if side * side != M:
            raise UnsupportedOrder(f"square QAM needs a perfect-square order, got M={M}")
        levels = np.arange(-(side - 1), side, 2, dtype=float)
        grid = (levels[:, None] + 1j * levels[None, :]).ravel()
        symbols = grid / np.sqrt(np.mean(np.abs(grid) ** 2))
    else:
        raise UnsupportedOrder(f"unknown constellation family {family!r}")
    return Constellation(symbols=symbols.astype(complex))


def transmit_vectors(c, Nt):
    """All ``M * Nt`` spatial-modulation vectors ``e_n s_m`` as rows.

    Row ``n * M + m`` holds ``s_m`` at position ``n`` and zeros elsewhere.
    """
    X = np.zeros((Nt * c.M, Nt), dtype=complex)
    for n in range(Nt):
        X[n * c.M:(n + 1) * c.M, n] = c.symbols
    return X


@dataclass(frozen=True)
class DistanceSpectrum:
    """Distinct squared distances ``d`` (increasing) with their probabilities ``f``."""

    d: np.ndarray
    f: np.ndarray

    @property
    def J(self):
        return len(self.d)

    def entries(self):
        return list(zip(self.d.tolist(), self.f.tolist()))


def distance_spectrum(c, Nt):
    X = transmit_vectors(c, Nt)
    diff = X[:, None, :] - X[None, :, :]
    dist = np.sort(np.sum(np.abs(diff) ** 2, axis=-1).ravel())
    starts = np.flatnonzero(np.diff(dist) > DISTANCE_GROUP_ATOL) + 1
    starts = np.concatenate(([0], starts))
    counts = np.diff(np.append(starts, dist.size))
    return DistanceSpectrum(d=dist[starts], f=counts / dist.size)


@dataclass(frozen=True)
class SelectionPattern:
    """Receive-antenna subset; ``k`` and ``indices`` are 1-based."""

    k: int
    indices: tuple

    def matrix(self, Nb):
        """The ``Nt x Nb`` selection matrix built from rows of ``I_Nb``."""
        return np.eye(Nb)[np.asarray(self.indices) - 1]


def enumerate_patterns(Nb, Nt):
    """All ``C(Nb, Nt)`` patterns in lexicographic order."""
    if not 1 <= Nt <= Nb:
        raise InvalidDimensions(f"need 1 <= Nt <= Nb, got Nt={Nt}, Nb={Nb}")
    return [
        SelectionPattern(k=k, indices=idx)
        for k, idx in enumerate(combinations(range(1, Nb + 1), Nt), start=1)
    ]


@dataclass(frozen=True)
class ChannelPair:
    H: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)


def generate_channels(cfg, rng):
    """Draw Bob's ``Nb x Na`` and Eve's ``Ne x Na`` Rayleigh channels."""
    H = sample_complex_gaussian(cfg.Nb, cfg.Na, 1.0, rng)
    G = sample_complex_gaussian(cfg.Ne, cfg.Na, 1.0, rng)
    return ChannelPair(H=H, G=G)


def select_rows(H, p):
    H = as_complex_matrix(H)
    idx = np.asarray(p.indices, dtype=int) - 1
    if idx.min() < 0 or idx.max() >= H.shape[0]:
        raise IndexOutOfRange(f"pattern {p.indices} outside rows 1..{H.shape[0]}")
    return H[idx]
