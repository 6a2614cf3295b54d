"""Monte Carlo decryption failure rate, for the default width and for the asymptotic one.

    python scripts/failure_rate.py --n 512 --trials 2000 --seed 1
"""

import argparse
import math

from dihedral_lwe.params import asymptotic_alpha, build_params
from dihedral_lwe.pke import estimate_failure_rate, predicted_noise_std
from dihedral_lwe.sampler import make_rng


def run(label, p, trials, seed):
    print(f"== {label}: n={p.n} q={p.q} sigma={p.sigma:.3f} alpha*q={p.alpha * p.q:.1f}")
    print(f"predicted noise std={predicted_noise_std(p):.1f}  q/4={p.q / 4:.1f}")
    print(estimate_failure_rate(p, trials, make_rng(seed)).summary())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--skip-asymptotic", action="store_true")
    args = ap.parse_args()

    run("decryption-sized width", build_params(args.n), args.trials, args.seed)
    if not args.skip_asymptotic:
        p = build_params(args.n, alpha=asymptotic_alpha(args.n))
        print(f"\nasymptotic alpha=1/(sqrt(n) log2(n)^2)={asymptotic_alpha(args.n):.3e}; "
              f"sqrt(n)*log2(n)={math.sqrt(args.n) * math.log2(args.n):.1f}")
        run("asymptotic width", p, max(100, args.trials // 10), args.seed)


if __name__ == "__main__":
    main()
