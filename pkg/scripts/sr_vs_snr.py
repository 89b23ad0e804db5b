#!/usr/bin/env python3
"""Average secrecy rate versus SNR for every selection strategy.

    python scripts/sr_vs_snr.py --preset desk --out results/sr_vs_snr.csv
    python scripts/sr_vs_snr.py --preset paper --workers 8   # hours
"""

import argparse
import logging
import time
from pathlib import Path

from psm_ras.experiments import desk_preset, paper_preset, run_sweep

parser = argparse.ArgumentParser()
parser.add_argument("--preset", choices=("desk", "paper"), default="desk")
parser.add_argument("--realizations", type=int)
parser.add_argument("--workers", type=int, default=1)
parser.add_argument("--seed", type=int, default=2020)
parser.add_argument("--out", default="results/sr_vs_snr.csv")
args = parser.parse_args()

logging.basicConfig(level=logging.INFO)
overrides = dict(workers=args.workers, seed=args.seed, output_path=args.out)
if args.realizations:
    overrides["realizations"] = args.realizations
ec = (desk_preset if args.preset == "desk" else paper_preset)(**overrides)
Path(args.out).parent.mkdir(parents=True, exist_ok=True)

t0 = time.perf_counter()
rows = run_sweep(ec)
print(f"{len(rows)} rows in {time.perf_counter() - t0:.1f}s -> {args.out}")
for snr in ec.snr_db_grid:
    cells = "  ".join(f"{r.strategy.value}={r.mean_sr:.3f}" for r in rows if r.snr_db == snr)
    print(f"{snr:6.1f} dB  {cells}")
