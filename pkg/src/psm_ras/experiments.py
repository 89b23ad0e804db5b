"""
Ergodic secrecy-rate sweeps, CDF samples and FLOP tables.

Every random draw comes from a stream derived from ``(seed, realization,
tag, ...)``, so results do not depend on the number of workers or on the
order in which realizations are scheduled. The channel of realization
``r`` is shared by every strategy and every SNR point.
"""

import contextlib
import csv
import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import PSMError
from .metrics import mi_bob_mc, mi_eve_mc
from .strategies import StrategyKind, flop_count, prepare_patterns, score_patterns, select_from_states
from .system import SystemConfig, build_constellation, distance_spectrum, generate_channels

__all__ = [
    "ExperimentConfig",
    "SweepRow",
    "desk_preset",
    "paper_preset",
    "rng_stream",
    "run_sweep",
    "run_cdf",
    "run_flops_table",
    "run_single",
    "write_sweep_csv",
    "write_cdf_csv",
    "SWEEP_COLUMNS",
]

log = logging.getLogger(__name__)

SWEEP_COLUMNS = ("snr_db", "strategy", "mean_sr", "std_error", "realizations", "mean_flops", "failures")
MODELED = (StrategyKind.ES_MC, StrategyKind.MAX_SR_A, StrategyKind.MAX_SR_L, StrategyKind.MAX_SR_H)


class Tag(enum.IntEnum):
    CHANNEL = 0
    RANDOM = 1
    SELECT = 2
    EVAL = 3


def rng_stream(seed, realization, tag, *extra):
    """Independent generator for one ``(realization, tag, ...)`` work item."""
    ss = np.random.SeedSequence(seed, spawn_key=(realization, int(tag), *extra))
    return np.random.default_rng(ss)


@dataclass(frozen=True)
class ExperimentConfig:
    system: SystemConfig
    snr_db_grid: tuple = (-6.0, 3.0, 15.0)
    realizations: int = 200
    n_samp: int = 500
    strategies: tuple = tuple(StrategyKind)
    seed: int = 2020
    output_path: str | None = None
    family: str = "psk"
    workers: int = 1

    def __post_init__(self):
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if not self.snr_db_grid:
            raise ValueError("snr_db_grid must be nonempty")
        if not self.strategies:
            raise ValueError("strategies must be nonempty")
        object.__setattr__(self, "snr_db_grid", tuple(float(s) for s in self.snr_db_grid))
        object.__setattr__(self, "strategies", tuple(StrategyKind(s) for s in self.strategies))


def desk_preset(**overrides):
    """Small profile (K = 5) on which exhaustive Monte-Carlo search is cheap."""
    base = dict(
        system=SystemConfig(Na=6, Nb=5, Nt=4, Ne=2, M=4, rho1=0.5),
        snr_db_grid=(-10.0, -6.0, -3.0, 0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 20.0),
        realizations=200,
        n_samp=500,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def paper_preset(**overrides):
    """Full-scale profile (K = 35, 2000 realizations). Expect hours of runtime."""
    base = dict(
        system=SystemConfig(Na=10, Nb=7, Nt=4, Ne=4, M=4, rho1=0.5),
        snr_db_grid=tuple(float(s) for s in range(-10, 21, 2)),
        realizations=2000,
        n_samp=1000,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    strategy: StrategyKind
    mean_sr: float
    std_error: float
    realizations: int
    mean_flops: float
    failures: int = 0

    def as_record(self):
        return {
            "snr_db": self.snr_db,
            "strategy": self.strategy.value,
            "mean_sr": self.mean_sr,
            "std_error": self.std_error,
            "realizations": self.realizations,
            "mean_flops": self.mean_flops,
            "failures": self.failures,
        }


def _realization(ec, grid, r):
    """Secrecy rate of each strategy's choice at each SNR for realization ``r``.

    Returns an array of shape ``(len(grid), len(strategies))`` with NaN where
    the realization failed.
    """
    c = build_constellation(ec.system.M, ec.family)
    spec = distance_spectrum(c, ec.system.Nt)
    channel = generate_channels(ec.system, rng_stream(ec.seed, r, Tag.CHANNEL))
    out = np.full((len(grid), len(ec.strategies)), np.nan)
    for i, snr_db in enumerate(grid):
        cfg = ec.system.with_snr_db(snr_db)
        try:
            states = prepare_patterns(channel, cfg)
            by_k = {s.pattern.k: s for s in states}
            evaluated = {}
            for j, kind in enumerate(ec.strategies):
                tag = Tag.RANDOM if kind is StrategyKind.RANDOM else Tag.SELECT
                res = select_from_states(kind, states, cfg, c, spec, ec.n_samp,
                                         rng_stream(ec.seed, r, tag))
                k = res.chosen.k
                if k not in evaluated:
                    st = by_k[k]
                    rng = rng_stream(ec.seed, r, Tag.EVAL, k)
                    bob = mi_bob_mc(st.precoders, c, cfg, ec.n_samp, rng)
                    eve = mi_eve_mc(st.whitening, c, cfg, ec.n_samp, rng)
                    evaluated[k] = max(bob.value - eve.value, 0.0)
                out[i, j] = evaluated[k]
        except PSMError as exc:
            log.warning("realization %d at %.2f dB failed: %s", r, snr_db, exc)
    return out


def _collect(ec, grid):
    work = partial(_realization, ec, grid)
    if ec.workers > 1:
        with ProcessPoolExecutor(max_workers=ec.workers) as pool:
            results = list(pool.map(work, range(ec.realizations), chunksize=8))
    else:
        results = [work(r) for r in range(ec.realizations)]
    return np.stack(results, axis=-1)  # (snr, strategy, realization)


def _model_flops(kind, ec, J):
    try:
        return float(flop_count(kind, ec.system, ec.n_samp, J))
    except PSMError:
        return float("nan")


def run_sweep(ec):
    """Average secrecy rate per (SNR, strategy) over paired channel realizations.

    Writes the CSV to ``ec.output_path`` when it is set.
    """
    sr = _collect(ec, ec.snr_db_grid)
    J = distance_spectrum(build_constellation(ec.system.M, ec.family), ec.system.Nt).J
    order = sorted(range(len(ec.strategies)), key=lambda j: list(StrategyKind).index(ec.strategies[j]))
    rows = []
    for i, snr_db in enumerate(ec.snr_db_grid):
        for j in order:
            vals = sr[i, j]
            ok = vals[np.isfinite(vals)]
            n = ok.size
            mean = float(ok.mean()) if n else float("nan")
            se = float(ok.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
            rows.append(SweepRow(snr_db, ec.strategies[j], mean, se, n,
                                 _model_flops(ec.strategies[j], ec, J), int(vals.size - n)))
    if ec.output_path:
        write_sweep_csv(rows, ec.output_path)
    return rows


def run_cdf(ec, snr_db):
    """Sorted per-realization secrecy rates for each strategy at one SNR."""
    sr = _collect(ec, (float(snr_db),))[0]
    return {kind: np.sort(sr[j][np.isfinite(sr[j])]) for j, kind in enumerate(ec.strategies)}


def run_flops_table(cfg, n_samp, J):
    return [(kind, flop_count(kind, cfg, n_samp, J)) for kind in MODELED]


def run_single(ec, realization=0):
    """Per-pattern diagnostics for one channel realization at every SNR point."""
    c = build_constellation(ec.system.M, ec.family)
    spec = distance_spectrum(c, ec.system.Nt)
    channel = generate_channels(ec.system, rng_stream(ec.seed, realization, Tag.CHANNEL))
    report = []
    for snr_db in ec.snr_db_grid:
        cfg = ec.system.with_snr_db(snr_db)
        states = prepare_patterns(channel, cfg)
        scores = {}
        for kind in StrategyKind:
            if kind is StrategyKind.RANDOM:
                continue
            if kind is StrategyKind.ES_MC and kind not in ec.strategies:
                continue
            scores[kind] = score_patterns(kind, states, cfg, c, spec, ec.n_samp,
                                          rng_stream(ec.seed, realization, Tag.SELECT))
        choices = {}
        for kind in ec.strategies:
            tag = Tag.RANDOM if kind is StrategyKind.RANDOM else Tag.SELECT
            res = select_from_states(kind, states, cfg, c, spec, ec.n_samp,
                                     rng_stream(ec.seed, realization, tag))
            st = next(s for s in states if s.pattern.k == res.chosen.k)
            rng = rng_stream(ec.seed, realization, Tag.EVAL, res.chosen.k)
            bob = mi_bob_mc(st.precoders, c, cfg, ec.n_samp, rng)
            eve = mi_eve_mc(st.whitening, c, cfg, ec.n_samp, rng)
            choices[kind] = (res, max(bob.value - eve.value, 0.0))
        report.append({
            "snr_db": snr_db,
            "patterns": [
                {
                    "k": s.pattern.k,
                    "indices": s.pattern.indices,
                    "beta_k": s.precoders.beta_k,
                    **{kind.value: float(v[n]) for kind, v in scores.items()},
                }
                for n, s in enumerate(states)
            ],
            "choices": choices,
        })
    return report


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _sink(dest):
    if hasattr(dest, "write"):
        return contextlib.nullcontext(dest)
    return open(dest, "w", newline="", encoding="utf-8")


def write_sweep_csv(rows, dest):
    """Write sweep rows to a path or text stream, 12 significant digits."""
    with _sink(dest) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            rec = row.as_record()
            writer.writerow([rec["strategy"] if col == "strategy" else _fmt(rec[col])
                             for col in SWEEP_COLUMNS])


def write_cdf_csv(samples, snr_db, dest):
    with _sink(dest) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("snr_db", "strategy", "rank", "sr", "ecdf"))
        for kind, vals in samples.items():
            n = len(vals)
            for i, v in enumerate(vals, start=1):
                writer.writerow((_fmt(snr_db), kind.value, i, _fmt(v), _fmt(i / n)))
