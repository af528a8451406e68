#!/usr/bin/env python3
"""Coverage and excess of w_n = round(alpha n^2) for alpha around pi^2/16.

A schedule with this growth would be an exact-on-average complement; the
probe records how many integers it leaves uncovered at finite N.
"""

import argparse
import math

from complement_lab.complements import schedule_complement
from complement_lab.powers import build_powers
from complement_lab.repcount import representation_counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-grid", default="10000,100000,1000000")
    ap.add_argument("--alphas", default="")
    args = ap.parse_args()

    base = math.pi**2 / 16
    alphas = [float(a) for a in args.alphas.split(",") if a] or [base * s for s in (0.9, 1.0, 1.1)]
    print(f"{'alpha':>10} {'N':>9} {'|W|':>6} {'uncovered':>10} {'frac':>7} {'raw/N':>8}")
    for N in (int(x) for x in args.n_grid.split(",")):
        ps = build_powers(2, N)
        for alpha in alphas:
            W = schedule_complement(alpha, N)
            p = representation_counts(W, ps, N)
            print(f"{alpha:10.6f} {N:9d} {len(W):6d} {p.uncovered_count:10d} "
                  f"{p.uncovered_count / N:7.4f} {p.raw_excess / N:8.4f}")


if __name__ == "__main__":
    main()
