"""Command-line front end: keys, encryption, analysis, lemma checks and benchmarks.

Exit codes: 0 success, 1 usage or file-format error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import secrets
import sys
import time
from pathlib import Path

import numpy as np

from . import codec
from .errors import CodecError, GrlweError
from .group_ring import RingElement, gr_mul
from .params import PROFILES, build_params
from .pke import Plaintext, decrypt, encrypt, keygen
from .sampler import make_rng, sample_uniform
from .spectral import is_invertible_real, spectral_profile
from .verify import format_table, run_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _seed_arg(value: str) -> int:
    s = int(value)
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return s


def _rng(args) -> np.random.Generator:
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed={seed}", file=sys.stderr)
    return make_rng(seed)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, data: bytes):
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


# subcommands -----------------------------------------------------------------


def cmd_params(args) -> int:
    print(build_params(args.n, args.profile).report())
    return EXIT_OK


def cmd_keygen(args) -> int:
    p = build_params(args.n, args.profile)
    pk, sk = keygen(p, _rng(args))
    _write(args.out_pk, codec.serialize(pk))
    _write(args.out_sk, codec.serialize(sk))
    return EXIT_OK


def _load_message(data: bytes, n: int, raw: bool) -> Plaintext:
    if not raw:
        return codec.deserialize(data, expected_kind=codec.KIND_MSG)
    need = (n + 7) // 8
    if len(data) != need:
        raise UsageError(f"raw message must be exactly {need} bytes for n={n}, got {len(data)}")
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if bits[n:].any():
        raise UsageError("raw message sets bits beyond n")
    return Plaintext(bits[:n])


def cmd_encrypt(args) -> int:
    pk = codec.deserialize(_read(args.pk), expected_kind=codec.KIND_PK)
    z = _load_message(_read(args.inp), pk.params.n, args.raw)
    if z.n != pk.params.n:
        raise UsageError(f"message has {z.n} bits, key expects {pk.params.n}")
    _write(args.out, codec.serialize(encrypt(pk, z, _rng(args))))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = codec.deserialize(_read(args.sk), expected_kind=codec.KIND_SK)
    ct = codec.deserialize(_read(args.inp), expected_kind=codec.KIND_CT, params=sk.params)
    z = decrypt(sk, ct)
    if args.raw:
        _write(args.out, np.packbits(z.bits, bitorder="little").tobytes())
    else:
        _write(args.out, codec.serialize(z, sk.params))
    return EXIT_OK


def _load_element(path: str, q: int | None) -> RingElement:
    text = Path(path).read_text() if Path(path).exists() else None
    if text is None:
        raise UsageError(f"cannot read {path}")
    try:
        coeffs = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"{path}: expected whitespace-separated integers") from None
    n = len(coeffs)
    if n < 4 or n & (n - 1):
        raise UsageError(f"{path}: need a power-of-two count >= 4 of coefficients, got {n}")
    q = q or build_params(n).q
    return RingElement.from_embedding(np.array(coeffs, dtype=np.int64), q)


def cmd_analyze(args) -> int:
    if args.pk:
        pk = codec.deserialize(_read(args.pk), expected_kind=codec.KIND_PK)
        x, label = pk.a, f"pk.a from {args.pk}"
    else:
        x, label = _load_element(args.inp, args.q), args.inp
    prof = spectral_profile(x)
    sums = prof.abs_f + prof.abs_g
    gaps = np.abs(prof.abs_f - prof.abs_g)
    print(f"element={label}")
    print(f"n={x.n} q={x.q}")
    print(f"matrix_norm={prof.matrix_norm:.6f}")
    print(f"invertible_over_Q={'yes' if is_invertible_real(x) else 'no'}")
    print(f"min_gap={gaps.min():.6e}")
    for name, arr in (("|f|+|g|", sums), ("||f|-|g||", gaps)):
        qs = np.quantile(arr, [0.0, 0.25, 0.5, 0.75, 1.0])
        print(f"quantiles {name}: " + " ".join(f"{v:.4f}" for v in qs))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "abs_f", "abs_g"])
            for k, af, ag in prof.rows():
                w.writerow([k, repr(float(af)), repr(float(ag))])
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.n, args.trials, _rng(args))
    print(format_table(results))
    return EXIT_VERIFY if any(r.status == "FAIL" for r in results) else EXIT_OK


def time_mul(n: int, mode: str, reps: int, rng) -> float:
    """Median seconds per gr_mul over ``reps`` timed batches."""
    p = build_params(n)
    x, y = sample_uniform(n, p.q, rng), sample_uniform(n, p.q, rng)
    gr_mul(x, y, mode)  # warm the JIT and twiddle cache
    inner = max(1, 20000 // n)
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        for _ in range(inner):
            gr_mul(x, y, mode)
        samples.append((time.perf_counter() - t0) / inner)
    return float(np.median(samples))


def bench_table(n_max: int, mode: str, reps: int = 5, rng=None) -> list[dict]:
    rng = rng or make_rng(0)
    sizes = []
    n = 64
    while n < n_max:
        sizes.append(n)
        n *= 2
    sizes.append(n_max)
    modes = ["ntt", "schoolbook"] if mode == "both" else [mode]
    rows = []
    for n in sizes:
        row = {"n": n}
        for md in modes:
            row[md] = time_mul(n, md, reps, rng)
        if mode == "both":
            row["ratio"] = row["schoolbook"] / row["ntt"]
        rows.append(row)
    return rows


def format_bench(rows: list[dict]) -> str:
    cols = [c for c in ("ntt", "schoolbook", "ratio") if c in rows[0]]
    head = f"{'n':>6}" + "".join(f"{(c + '_us' if c != 'ratio' else c):>16}" for c in cols)
    lines = [head]
    for r in rows:
        cells = "".join(f"{r[c] * 1e6:>16.2f}" if c != "ratio" else f"{r[c]:>16.2f}" for c in cols)
        lines.append(f"{r['n']:>6}" + cells)
    return "\n".join(lines)


def cmd_bench(args) -> int:
    if args.n < 4 or args.n & (args.n - 1):
        raise UsageError("--n must be a power of two >= 4")
    print(format_bench(bench_table(args.n, args.mode, args.reps)))
    return EXIT_OK


def cmd_selftest(args) -> int:
    rng = make_rng(2024)
    ok = True
    p = build_params(64)
    pk, sk = keygen(p, rng)
    z = Plaintext(rng.integers(0, 2, size=p.n, dtype=np.uint8))
    ct = encrypt(pk, z, rng)
    for obj, kind in ((pk, codec.KIND_PK), (sk, codec.KIND_SK), (ct, codec.KIND_CT)):
        ok &= codec.deserialize(codec.serialize(obj), expected_kind=kind) == obj
    ok &= decrypt(sk, ct) == z
    print(f"roundtrip n=64: {'PASS' if ok else 'FAIL'}")
    results = run_suite(8, 20, rng)
    print(format_table(results))
    ok &= not any(r.status == "FAIL" for r in results)
    print("selftest: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dihedral-lwe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("params", help="print a parameter preset")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--profile", choices=PROFILES, default="default")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("keygen", help="generate a key pair")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--profile", choices=PROFILES, default="default")
    sp.add_argument("--out-pk", required=True)
    sp.add_argument("--out-sk", required=True)
    sp.add_argument("--seed", type=_seed_arg)
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt", help="encrypt one message block")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--seed", type=_seed_arg)
    sp.add_argument("--raw", action="store_true", help="message file is bare packed bits")
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt", help="decrypt one ciphertext")
    sp.add_argument("--sk", required=True)
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--raw", action="store_true", help="write bare packed bits")
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("analyze", help="spectral profile of an element")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="inp", help="text file of n integers")
    src.add_argument("--pk", help="analyze the public element a of a key")
    sp.add_argument("--q", type=int, help="modulus for --in (default: preset for n)")
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify-lemmas", help="randomized checks of the ring's algebraic facts")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=_seed_arg)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time ring multiplication")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("ntt", "schoolbook", "both"), default="both")
    sp.add_argument("--reps", type=int, default=5)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("selftest", help="quick end-to-end check")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CodecError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GrlweError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
