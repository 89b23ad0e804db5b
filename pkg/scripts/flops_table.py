#!/usr/bin/env python3
"""Model FLOP counts at the full-scale dimensions."""

from psm_ras.experiments import paper_preset, run_flops_table
from psm_ras.system import build_constellation, distance_spectrum

ec = paper_preset()
J = distance_spectrum(build_constellation(ec.system.M), ec.system.Nt).J
for kind, flops in run_flops_table(ec.system, ec.n_samp, J):
    print(f"{kind.value:10s} {flops:>14,d}")
