#!/usr/bin/env python3
"""Greedy complements of r-th powers for several r.

Compares W(N) / N^(1-1/r) with the Gamma density 1/(Gamma(2-1/r)Gamma(1+1/r))
and the excess ratio with c_r. The last column sets sum f / N against r,
which is exploratory only.
"""

import argparse

from complement_lab.complements import greedy_complement
from complement_lab.powers import build_powers
from complement_lab.proofcheck.constants import gamma_complement_constant, theorem2_constant
from complement_lab.repcount import representation_counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10**6)
    ap.add_argument("--r-max", type=int, default=5)
    args = ap.parse_args()
    N = args.n
    print(f"{'r':>2} {'|W|':>7} {'W/N^(1-1/r)':>12} {'density':>8} {'excess/N':>9} {'c_r':>10} {'sum f/N':>8}")
    for r in range(2, args.r_max + 1):
        W = greedy_complement(r, N)
        p = representation_counts(W, build_powers(r, N), N)
        print(f"{r:2d} {len(W):7d} {W.count(N) / N ** (1 - 1 / r):12.4f} {gamma_complement_constant(r):8.4f} "
              f"{p.adjusted_excess / N:9.4f} {theorem2_constant(r):10.3e} {p.total / N:8.4f}")


if __name__ == "__main__":
    main()
