#!/usr/bin/env python3
"""Run every figure preset and collect results under an output root.

Desk-scale counts by default; pass --full-scale to restore the original
trial counts (expect hours of runtime at full scale).
"""
import argparse
import sys
import time
from pathlib import Path

from dyadsim.cli import PRESETS, main as dyadsim_main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-root", default="out", help="output root directory")
    parser.add_argument("--presets", nargs="+", choices=sorted(PRESETS),
                        default=sorted(PRESETS))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--full-scale", action="store_true")
    args = parser.parse_args(argv)

    kind_to_command = {"region": "region", "perturb": "perturb",
                       "ensemble": "ensemble", "tetrad": "tetrad",
                       "chain": "chain"}
    failures = []
    for preset in args.presets:
        command = kind_to_command[PRESETS[preset]["kind"]]
        out_dir = Path(args.out_root) / preset
        cli_args = [command, "--preset", preset, "--out", str(out_dir),
                    "--seed", str(args.seed), "--threads", str(args.threads)]
        if args.full_scale:
            cli_args.append("--full-scale")
        print(f"== {preset}: dyadsim {' '.join(cli_args)}", flush=True)
        t0 = time.monotonic()
        code = dyadsim_main(cli_args)
        print(f"== {preset}: exit {code} in {time.monotonic() - t0:.1f}s",
              flush=True)
        if code != 0:
            failures.append(preset)
    if failures:
        print(f"failed presets: {failures}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
