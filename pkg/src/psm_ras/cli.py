"""Command-line entry point: ``psm-ras {sweep,cdf,flops,single}``."""

import argparse
import logging
import sys
from dataclasses import replace

from .experiments import (
    desk_preset,
    paper_preset,
    run_cdf,
    run_flops_table,
    run_single,
    run_sweep,
    write_cdf_csv,
    write_sweep_csv,
)
from .strategies import StrategyKind
from .system import SystemConfig, build_constellation, distance_spectrum

PRESETS = {"desk": desk_preset, "paper": paper_preset}


def _floats(text):
    return tuple(float(t) for t in text.split(",") if t.strip())


def _strategies(text):
    return tuple(StrategyKind.parse(t) for t in text.split(",") if t.strip())


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=sorted(PRESETS), default="desk")
    common.add_argument("--na", type=int)
    common.add_argument("--nb", type=int)
    common.add_argument("--nt", type=int)
    common.add_argument("--ne", type=int)
    common.add_argument("--mod-order", type=int)
    common.add_argument("--family", choices=("psk", "qam"))
    common.add_argument("--rho1", type=float)
    common.add_argument("--snr-db", type=_floats, help="comma-separated SNR grid in dB")
    common.add_argument("--realizations", type=int)
    common.add_argument("--nsamp", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--strategies", type=_strategies,
                        help="comma list of " + ",".join(k.value for k in StrategyKind))
    common.add_argument("--workers", type=int)
    common.add_argument("--out", help="CSV output path (stdout when omitted)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="psm-ras", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="average secrecy rate versus SNR")
    cdf = sub.add_parser("cdf", parents=[common], help="per-realization secrecy rates at one SNR")
    cdf.add_argument("--at-snr", type=float, help="SNR in dB (default: first grid point)")
    sub.add_parser("flops", parents=[common], help="model FLOP counts per strategy")
    single = sub.add_parser("single", parents=[common], help="diagnostics for one realization")
    single.add_argument("--realization", type=int, default=0)
    return parser


def config_from_args(args):
    ec = PRESETS[args.preset]()
    sys_kw = {}
    for flag, name in (("na", "Na"), ("nb", "Nb"), ("nt", "Nt"), ("ne", "Ne"),
                       ("mod_order", "M"), ("rho1", "rho1")):
        value = getattr(args, flag)
        if value is not None:
            sys_kw[name] = value
    if "Nb" in sys_kw and "Nt" not in sys_kw:
        sys_kw["Nt"] = None
    system = SystemConfig(**{**ec.system.__dict__, **sys_kw})
    kw = {"system": system}
    for flag, name in (("snr_db", "snr_db_grid"), ("realizations", "realizations"),
                       ("nsamp", "n_samp"), ("seed", "seed"), ("strategies", "strategies"),
                       ("out", "output_path"), ("family", "family"), ("workers", "workers")):
        value = getattr(args, flag)
        if value is not None:
            kw[name] = value
    return replace(ec, **kw)


def _print_single(report, out):
    for block in report:
        out.write(f"# SNR {block['snr_db']:g} dB\n")
        pats = block["patterns"]
        keys = [k for k in pats[0] if k not in ("k", "indices")] if pats else []
        out.write("k\tindices\t" + "\t".join(keys) + "\n")
        for p in pats:
            idx = ",".join(map(str, p["indices"]))
            out.write(f"{p['k']}\t{idx}\t" + "\t".join(f"{p[k]:.6g}" for k in keys) + "\n")
        for kind, (res, sr) in block["choices"].items():
            out.write(f"{kind.value}: k={res.chosen.k} {res.chosen.indices} "
                      f"objective={res.objective_value:.6g} sr={sr:.6g}\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    ec = config_from_args(args)

    if args.command == "sweep":
        rows = run_sweep(ec)
        if ec.output_path is None:
            write_sweep_csv(rows, sys.stdout)
    elif args.command == "cdf":
        snr = args.at_snr if args.at_snr is not None else ec.snr_db_grid[0]
        samples = run_cdf(replace(ec, output_path=None), snr)
        write_cdf_csv(samples, snr, ec.output_path or sys.stdout)
    elif args.command == "flops":
        c = build_constellation(ec.system.M, ec.family)
        J = distance_spectrum(c, ec.system.Nt).J
        lines = ["strategy,flops"] + [f"{k.value},{n}" for k, n in run_flops_table(ec.system, ec.n_samp, J)]
        text = "\n".join(lines) + "\n"
        if ec.output_path:
            with open(ec.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    elif args.command == "single":
        _print_single(run_single(ec, args.realization), sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
