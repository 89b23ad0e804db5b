"""Receive-antenna selection for secure pre-coding aided spatial modulation."""

from .errors import *  # noqa: F401,F403
from .experiments import ExperimentConfig, SweepRow, desk_preset, paper_preset, run_cdf, run_flops_table, run_sweep
from .metrics import (
    Estimator,
    RateEstimate,
    cutoff_bob,
    cutoff_bob_pairs,
    cutoff_eve,
    cutoff_sr,
    high_snr_objective,
    low_snr_objective,
    mi_bob_mc,
    mi_eve_mc,
    secrecy_rate_mc,
    spectrum_rate_bob,
    spectrum_rate_eve,
    spectrum_sr_objective,
)
from .precoding import EveWhitening, PrecoderSet, compute_precoders, compute_whitening
from .strategies import StrategyKind, StrategyResult, flop_count, select_pattern
from .system import (
    ChannelPair,
    Constellation,
    DistanceSpectrum,
    SelectionPattern,
    SystemConfig,
    build_constellation,
    distance_spectrum,
    enumerate_patterns,
    generate_channels,
    select_rows,
)

__version__ = "0.1.0"
