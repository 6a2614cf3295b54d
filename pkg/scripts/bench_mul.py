"""Time gr_mul on the NTT and schoolbook paths across n and fit the growth exponent.

    python scripts/bench_mul.py --n-max 2048
"""

import argparse

import numpy as np

from dihedral_lwe.cli import bench_table, format_bench
from dihedral_lwe.sampler import make_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=1024)
    ap.add_argument("--reps", type=int, default=7)
    args = ap.parse_args()

    rows = bench_table(args.n_max, "both", args.reps, make_rng(0))
    print(format_bench(rows))
    ns = np.array([r["n"] for r in rows], dtype=float)
    for mode in ("ntt", "schoolbook"):
        t = np.array([r[mode] for r in rows])
        slope = np.polyfit(np.log(ns), np.log(t), 1)[0]
        print(f"{mode}: log-log slope {slope:.2f}")


if __name__ == "__main__":
    main()
