#!/usr/bin/env python3
"""Empirical secrecy-rate CDFs at -3, 3 and 12 dB, one CSV per SNR."""

import argparse
from pathlib import Path

import numpy as np

from psm_ras.experiments import desk_preset, paper_preset, run_cdf, write_cdf_csv

parser = argparse.ArgumentParser()
parser.add_argument("--preset", choices=("desk", "paper"), default="desk")
parser.add_argument("--snr-db", default="-3,3,12")
parser.add_argument("--workers", type=int, default=1)
parser.add_argument("--outdir", default="results")
args = parser.parse_args()

ec = (desk_preset if args.preset == "desk" else paper_preset)(workers=args.workers)
outdir = Path(args.outdir)
outdir.mkdir(parents=True, exist_ok=True)
for snr in (float(s) for s in args.snr_db.split(",")):
    samples = run_cdf(ec, snr)
    path = outdir / f"sr_cdf_{snr:g}dB.csv"
    write_cdf_csv(samples, snr, path)
    medians = ", ".join(f"{k.value}={np.median(v):.3f}" for k, v in samples.items())
    print(f"{snr:g} dB medians: {medians} -> {path}")
