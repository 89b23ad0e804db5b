"""
Receive-antenna selection strategies, the exhaustive and random baselines,
and the analytical FLOP model for each selector.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoFeasiblePattern, RankDeficientChannel, UnsupportedKind
from .metrics import (
    cutoff_bob,
    cutoff_eve,
    high_snr_objective,
    low_snr_objective,
    mi_from_noise,
    spectrum_sr_objective,
)
from .numeric import sample_complex_gaussian
from .precoding import compute_precoders, compute_whitening
from .system import enumerate_patterns, select_rows

__all__ = [
    "StrategyKind",
    "StrategyResult",
    "PatternState",
    "prepare_patterns",
    "score_patterns",
    "select_pattern",
    "select_from_states",
    "best_index",
    "flop_count",
]


class StrategyKind(enum.Enum):
    RANDOM = "random"
    ES_MC = "es-mc"
    ES_CUTOFF = "es-cutoff"
    MAX_SR_L = "max-sr-l"
    MAX_SR_H = "max-sr-h"
    MAX_SR_A = "max-sr-a"

    @classmethod
    def parse(cls, text):
        key = text.strip().lower().replace("_", "-")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown strategy {text!r}; choose from {[k.value for k in cls]}")


@dataclass(frozen=True)
class StrategyResult:
    """Outcome of one selection.

    ``flops`` is the analytical model count, ``None`` where no model exists.
    """

    chosen: object
    objective_value: float
    evaluations: int
    flops: int | None


@dataclass(frozen=True)
class PatternState:
    pattern: object
    precoders: object
    whitening: object


def prepare_patterns(channel, cfg):
    """Precoders and whitening for every feasible pattern, in pattern order.

    Rank-deficient sub-channels are skipped.
    """
    states = []
    for p in enumerate_patterns(cfg.Nb, cfg.Nt):
        try:
            ps = compute_precoders(select_rows(channel.H, p))
        except RankDeficientChannel:
            continue
        states.append(PatternState(p, ps, compute_whitening(channel.G, ps, cfg)))
    return states


def score_patterns(kind, states, cfg, c, spec, n_samp=1000, rng=None):
    """Objective value of each state under ``kind`` (not defined for RANDOM).

    ES_MC draws one set of noise samples from ``rng`` and reuses it for
    every pattern.
    """
    if kind is StrategyKind.ES_MC:
        if n_samp < 1:
            raise ValueError("n_samp must be >= 1")
        w_b = sample_complex_gaussian(n_samp, cfg.Nt, 1.0, rng)
        w_e = sample_complex_gaussian(n_samp, cfg.Ne, 1.0, rng)
        scale = 1.0 / np.sqrt(cfg.sigma_b_sq)
        eye = np.eye(cfg.Nt)
        return np.array([
            mi_from_noise(s.precoders.beta_k * scale * eye, c, cfg, w_b).value
            - mi_from_noise(s.whitening.Q, c, cfg, w_e).value
            for s in states
        ])
    if kind is StrategyKind.ES_CUTOFF:
        return np.array([
            cutoff_bob(s.precoders.beta_k, cfg, c).value - cutoff_eve(s.whitening, cfg, c).value
            for s in states
        ])
    if kind is StrategyKind.MAX_SR_L:
        return np.array([low_snr_objective(s.precoders.beta_k, s.whitening, cfg) for s in states])
    if kind is StrategyKind.MAX_SR_H:
        return np.array([high_snr_objective(s.whitening) for s in states])
    if kind is StrategyKind.MAX_SR_A:
        return np.array([
            spectrum_sr_objective(s.precoders.beta_k, s.whitening, cfg, spec) for s in states
        ])
    raise ValueError(f"{kind} has no objective")


def best_index(kind, scores):
    """Position of the winning score; the first extreme wins ties."""
    scores = np.asarray(scores, dtype=float)
    return int(np.argmin(scores) if kind is StrategyKind.MAX_SR_H else np.argmax(scores))


def select_from_states(kind, states, cfg, c, spec, n_samp=1000, rng=None):
    if not states:
        raise NoFeasiblePattern("every receive-antenna pattern is rank deficient")
    kind = StrategyKind(kind)
    try:
        flops = flop_count(kind, cfg, n_samp, spec.J)
    except UnsupportedKind:
        flops = None
    if kind is StrategyKind.RANDOM:
        state = states[int(rng.integers(len(states)))]
        return StrategyResult(state.pattern, float("nan"), 0, flops)
    scores = score_patterns(kind, states, cfg, c, spec, n_samp, rng)
    best = best_index(kind, scores)
    return StrategyResult(states[best].pattern, float(scores[best]), len(states), flops)


def select_pattern(kind, channel, cfg, c, spec, n_samp=1000, rng=None):
    """Choose a receive-antenna pattern for ``channel`` with strategy ``kind``.

    Every feasible pattern is scored; MAX_SR_H takes the minimum of its
    objective, every other selector the maximum. Ties go to the lowest
    pattern index. RANDOM draws uniformly from the feasible patterns.

    Raises
    ------
    NoFeasiblePattern
        If no pattern yields a full-rank sub-channel.
    """
    states = prepare_patterns(channel, cfg)
    return select_from_states(kind, states, cfg, c, spec, n_samp, rng)


def flop_count(kind, cfg, n_samp, J):
    """Model FLOP count of a selector over all ``K`` patterns.

    Raises
    ------
    UnsupportedKind
        For RANDOM and ES_CUTOFF.
    """
    kind = StrategyKind(kind)
    K, M, Na, Nt, Ne = cfg.K, cfg.M, cfg.Na, cfg.Nt, cfg.Ne
    shared = 2 * Ne**2 * Na + 2 * Ne * Na * Nt
    low = shared + 2 * Ne**2 * Nt - Ne * Na - Ne * Nt + Fraction(Ne**3, 3) - Fraction(4 * Ne, 3)
    if kind is StrategyKind.ES_MC:
        total = K * M**2 * Nt**2 * n_samp * (2 * Ne * Nt + 6 * Nt + 5 * Ne - 1)
    elif kind is StrategyKind.MAX_SR_L:
        total = K * (low + 3)
    elif kind is StrategyKind.MAX_SR_H:
        total = K * (shared - Ne * Na + 2 * Ne * Nt - 1)
    elif kind is StrategyKind.MAX_SR_A:
        total = K * (low + J * 6 + 7)
    else:
        raise UnsupportedKind(f"no FLOP model for {kind.value}")
    return int(round(Fraction(total)))
