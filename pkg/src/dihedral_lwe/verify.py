"""Randomized checks of the ring's algebraic facts, reported as a pass/fail table."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotInvertible
from .group_ring import (
    ORACLE_MAX_N,
    RingElement,
    gr_mul,
    gr_mul_oracle,
    int_mul,
    normal_form_transform,
)
from .lattice import (
    MAX_N,
    bareiss_det,
    check_dual_permutation,
    exact_mul,
    ideal_basis,
    mod_q_projection,
)
from .negacyclic import ntt_available, poly_mul
from .params import build_params
from .pke import Plaintext, encode, encrypt, keygen, noise_term
from .sampler import ErrorDist, sample_lwe, sample_uniform
from .spectral import gauss_norm_tail, is_invertible_real, reg_rep_matrix, spectral_profile


@dataclass
class CheckResult:
    name: str
    status: str  # PASS, FAIL or SKIP
    trials: int
    detail: str = ""
    seconds: float = 0.0


def _ternary(n: int, q: int, rng) -> RingElement:
    return RingElement.from_embedding(rng.integers(-1, 2, size=n), q)


def check_mul_oracle(n, q, trials, rng):
    if n > ORACLE_MAX_N:
        return "SKIP", f"oracle limited to n <= {ORACLE_MAX_N}"
    bad = 0
    for _ in range(trials):
        x, y = sample_uniform(n, q, rng), sample_uniform(n, q, rng)
        bad += gr_mul(x, y) != gr_mul_oracle(x, y)
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} mismatches"


def check_ntt(n, q, trials, rng):
    m = n // 2
    if not ntt_available(m, q):
        return "SKIP", f"q={q} not 1 mod {2 * m}"
    bad = 0
    for _ in range(trials):
        x, y = sample_uniform(n, q, rng), sample_uniform(n, q, rng)
        bad += poly_mul(x.f, y.f, "ntt") != poly_mul(x.f, y.f, "schoolbook")
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} mismatches"


def check_eigenvalues(n, q, trials, rng):
    if n > ORACLE_MAX_N:
        return "SKIP", f"dense oracle limited to n <= {ORACLE_MAX_N}"
    worst = 0.0
    for _ in range(trials):
        x = sample_uniform(n, q, rng)
        a = reg_rep_matrix(x).astype(float)
        dense = np.sort(np.linalg.eigvalsh(a @ a.T))
        formula = spectral_profile(x).eigenvalues()
        worst = max(worst, float(np.max(np.abs(dense - formula)) / dense.max()))
    return ("PASS" if worst <= 1e-9 else "FAIL"), f"max rel err {worst:.2e}"


def check_invertibility(n, q, trials, rng):
    if n > MAX_N:
        return "SKIP", f"exact determinant limited to n <= {MAX_N}"
    bad = singular = 0
    for _ in range(trials):
        x = _ternary(n, q, rng)
        exact = bareiss_det(reg_rep_matrix(x).tolist()) != 0
        singular += not exact
        bad += exact != is_invertible_real(x)
    one_plus_s = RingElement.one(n, q) + RingElement.reflection(n, q)
    bad += is_invertible_real(one_plus_s)
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} disagreements, {singular} singular samples"


def check_dual_permutation_lemma(n, q, trials, rng):
    if n > MAX_N:
        return "SKIP", f"exact lattices limited to n <= {MAX_N}"
    bad = done = 0
    while done < trials:
        h = _ternary(n, q, rng)
        if bareiss_det(reg_rep_matrix(h).tolist()) == 0:
            continue
        done += 1
        bad += not check_dual_permutation(h)
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} failures"


def check_smallmul(n, q, trials, rng):
    bad = 0
    root_n = math.sqrt(n)
    for _ in range(trials):
        x = rng.integers(-50, 51, size=n)
        y = rng.integers(-50, 51, size=n)
        lhs = np.linalg.norm(int_mul(x, y))
        bad += lhs > root_n * np.linalg.norm(x) * np.linalg.norm(y)
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} violations"


def check_normal_form(n, q, trials, rng):
    p = build_params(n)
    dist = ErrorDist(p.sigma if q == p.q else 2.0, q, n // 2)
    bad = 0
    for _ in range(trials):
        s = sample_uniform(n, q, rng)
        (smp1, e1) = sample_lwe(s, dist, rng, side="right", return_error=True)
        (smp2, e2) = sample_lwe(s, dist, rng, side="right", return_error=True)
        try:
            a_p, b_p = normal_form_transform((smp1.a, smp1.b), (smp2.a, smp2.b))
        except NotInvertible:
            continue
        bad += b_p != a_p * e1 - e2
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} mismatches"


def check_module_map(n, q, trials, rng):
    if n > MAX_N:
        return "SKIP", f"exact lattices limited to n <= {MAX_N}"
    bad = done = 0
    while done < trials:
        h = _ternary(n, q, rng)
        try:
            lat = ideal_basis(h)
        except NotInvertible:
            continue
        done += 1
        coords = rng.integers(-3, 4, size=n)
        v = [sum(int(c) * row[j] for c, row in zip(coords, lat.basis)) for j in range(n)]
        x = rng.integers(-3, 4, size=n)
        vx = exact_mul(v, x)
        lhs = mod_q_projection(vx, lat, q)
        rhs = mod_q_projection(v, lat, q) * RingElement.from_embedding(x, q)
        bad += lhs != rhs
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} mismatches"


def check_gauss_ball(n, q, trials, rng):
    if n < 4:
        return "SKIP", ""
    mult = 3 * math.sqrt(math.log(n))
    frac = gauss_norm_tail(1.0, n, max(trials, 1000), mult, rng)
    return ("PASS" if frac < 0.01 else "FAIL"), f"tail fraction {frac:.4f}"


def check_decryption_identity(n, q, trials, rng):
    p = build_params(n)
    bad = 0
    for _ in range(trials):
        pk, sk = keygen(p, rng)
        z = Plaintext(rng.integers(0, 2, size=n, dtype=np.uint8))
        ct, rand = encrypt(pk, z, rng, return_randomness=True)
        lhs = ct.v - sk.s * ct.u - p.half_q * encode(z, p.q)
        bad += lhs != noise_term(sk, rand)
    return ("PASS" if bad == 0 else "FAIL"), f"{bad} mismatches"


CHECKS: list[tuple[str, Callable]] = [
    ("mul_vs_cayley_oracle", check_mul_oracle),
    ("ntt_vs_schoolbook", check_ntt),
    ("eigenvalue_formula", check_eigenvalues),
    ("invertibility_criterion", check_invertibility),
    ("dual_permutation", check_dual_permutation_lemma),
    ("smallmul_bound", check_smallmul),
    ("normal_form_reduction", check_normal_form),
    ("projection_module_map", check_module_map),
    ("gauss_ball_tail", check_gauss_ball),
    ("decryption_identity", check_decryption_identity),
]


def run_suite(n: int, trials: int, rng: np.random.Generator, q: int | None = None) -> list[CheckResult]:
    q = q or build_params(n).q
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        status, detail = fn(n, q, trials, rng)
        results.append(CheckResult(name, status, trials, detail, time.perf_counter() - t0))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  result  trials  detail"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.status:<6}  {r.trials:>6}  {r.detail} ({r.seconds:.2f}s)")
    return "\n".join(lines)
