"""Tail fraction of the matrix norm of Gaussian elements against threshold multiples of sigma*sqrt(n).

    python scripts/gauss_tail.py --n 256 --trials 10000
"""

import argparse
import math

import numpy as np

from dihedral_lwe.sampler import make_rng
from dihedral_lwe.spectral import gaussian_matrix_norms


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--sigma", type=float, default=1.0)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    norms = gaussian_matrix_norms(args.sigma, args.n, args.trials, make_rng(args.seed))
    scaled = norms / (args.sigma * math.sqrt(args.n))
    print(f"n={args.n} sigma={args.sigma} trials={args.trials}")
    print(f"norm/(sigma sqrt n): mean={scaled.mean():.3f} p99={np.quantile(scaled, 0.99):.3f} max={scaled.max():.3f}")
    print(f"reference 3*sqrt(ln n)={3 * math.sqrt(math.log(args.n)):.3f}")
    print("mult   tail_fraction")
    for mult in (1.0, 1.5, 2.0, 2.5, 3.0, 3 * math.sqrt(math.log(args.n))):
        print(f"{mult:5.2f}  {np.mean(scaled > mult):.4f}")


if __name__ == "__main__":
    main()
