#!/usr/bin/env python3
"""Sweep the noise amplitude and report the tetrad bias B at alpha = 0.1.

The cross-coupled tetrad's bias depends strongly on how far below the
steady occupation the initial noise sits: weaker noise spends longer in the
linear-growth window where the dyads can align, so B grows as the amplitude
shrinks. This script quantifies that dependence so the default amplitude is
an explicit, documented choice rather than a hidden one.
"""
import argparse
import sys

import numpy as np

from dyadsim import NoiseSpec, SiteParams, TetradShape
from dyadsim.ensemble import tetrad_bias


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--amplitudes", type=float, nargs="+",
                        default=[1e-2, 1e-3, 2e-4, 1e-4, 1e-5, 1e-6])
    parser.add_argument("--alpha", type=float, default=0.1)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args(argv)

    base = SiteParams(gamma=2.8, g=0.5)
    print("amplitude,bias,bias_stderr,n_resolved")
    for eta in sorted(args.amplitudes, reverse=True):
        (pt,) = tetrad_bias(0.55, [args.alpha], TetradShape.SQUARE, base,
                            5.0 / 3.0, args.trials, base_seed=args.seed,
                            noise=NoiseSpec(amplitude=eta),
                            threads=args.threads)
        counts = pt.stats.state_counts
        aligned = counts.get(0, 0) + counts.get(3, 0)
        crossed = counts.get(1, 0) + counts.get(2, 0)
        if aligned > 0 and crossed > 0:
            se = pt.bias * np.sqrt(1.0 / aligned + 1.0 / crossed)
        else:
            se = float("nan")
        print(f"{eta:g},{pt.bias:.4f},{se:.4f},{pt.stats.n_resolved}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
